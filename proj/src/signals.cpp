#include "sinhreg/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "sinhreg/errors.hpp"

namespace sinhreg {
namespace {

// sin(delta u) / u, continuous at u = 0.
double sine_over(double delta, double u) {
  if (std::fabs(u) < 1e-6) {
    const double t2 = (delta * u) * (delta * u);
    return delta * (1.0 - t2 / 6.0 + t2 * t2 / 120.0);
  }
  return std::sin(delta * u) / u;
}

}  // namespace

SignalSpec SignalSpec::test_function(double delta) {
  SignalSpec s;
  s.kind = SignalKind::TestFunction;
  s.bandwidth_delta = delta;
  s.validate();
  return s;
}

SignalSpec SignalSpec::sinc_pure(double delta) {
  SignalSpec s;
  s.kind = SignalKind::SincPure;
  s.bandwidth_delta = delta;
  s.validate();
  return s;
}

SignalSpec SignalSpec::custom_function(double delta, std::function<double(double)> f) {
  SignalSpec s;
  s.kind = SignalKind::Custom;
  s.bandwidth_delta = delta;
  s.custom = std::move(f);
  s.validate();
  return s;
}

void SignalSpec::validate() const {
  if (!(bandwidth_delta > 0.0 && bandwidth_delta < std::numbers::pi)) {
    throw ConfigurationError("signal bandwidth delta must lie in (0, pi)");
  }
  if (kind == SignalKind::Custom && !custom) {
    throw ConfigurationError("custom signal without a function");
  }
}

double signal_eval(const SignalSpec& spec, double x) {
  if (!std::isfinite(x)) throw DomainError("signal_eval: non-finite argument");
  const double delta = spec.bandwidth_delta;
  switch (spec.kind) {
    case SignalKind::TestFunction: {
      const double scale = 1.0 / std::sqrt(std::numbers::pi * (5.0 * delta + std::sin(delta)));
      return scale * (2.0 * sine_over(delta, x) + sine_over(delta, x - 1.0));
    }
    case SignalKind::SincPure:
      return sine_over(delta, x) / delta;
    case SignalKind::Custom:
      return spec.custom(x);
  }
  throw ConfigurationError("invalid signal kind");
}

double uniform_open01(Rng& rng) {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(rng() >> 11) + 0.5) * kScale;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) { return base_seed ^ trial; }

NodeSet generate_nodes(int n_half, std::uint64_t seed, double min_sep, double max_perturb) {
  if (n_half < 1) throw ConfigurationError("generate_nodes: N must be >= 1");
  if (!(min_sep > 0.0 && min_sep < 1.0)) throw ConfigurationError("generate_nodes: min_sep must lie in (0, 1)");
  if (!(max_perturb >= 0.0 && max_perturb < 1.0)) {
    throw ConfigurationError("generate_nodes: max_perturb must lie in [0, 1)");
  }
  Rng rng(seed);
  NodeSetOptions options;
  options.separation_floor = std::max(min_sep, options.separation_floor);
  std::vector<double> nodes(static_cast<std::size_t>(2 * n_half + 1));
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    for (int j = -n_half; j <= n_half; ++j) {
      const double eps = max_perturb * (2.0 * uniform_open01(rng) - 1.0);
      nodes[static_cast<std::size_t>(j + n_half)] = j + eps;
    }
    try {
      return NodeSet(nodes, options);
    } catch (const DegenerateNodesError&) {
      // redraw
    }
  }
  throw GenerationError("generate_nodes: no admissible node set after " + std::to_string(kMaxRedraws) +
                        " draws");
}

PeriodicNodeSet generate_periodic_offsets(int period_m, int n_blocks, std::uint64_t seed, double min_gap) {
  if (period_m < 1) throw ConfigurationError("generate_periodic_offsets: M must be >= 1");
  if (!(min_gap > 0.0)) throw ConfigurationError("generate_periodic_offsets: min_gap must be > 0");
  Rng rng(seed);
  const double span = static_cast<double>(period_m);
  std::vector<double> offsets(static_cast<std::size_t>(period_m));
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    for (auto& t : offsets) t = span * uniform_open01(rng);
    std::sort(offsets.begin(), offsets.end());
    double gap = span - offsets.back() + offsets.front();
    for (std::size_t i = 1; i < offsets.size(); ++i) gap = std::min(gap, offsets[i] - offsets[i - 1]);
    if (gap < min_gap) continue;
    try {
      return PeriodicNodeSet(offsets, n_blocks);
    } catch (const DegenerateNodesError&) {
      // redraw
    }
  }
  throw GenerationError("generate_periodic_offsets: no admissible offsets after " +
                        std::to_string(kMaxRedraws) + " draws");
}

}  // namespace sinhreg
