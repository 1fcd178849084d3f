#include "sinhreg/reconstruct.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "sinhreg/errors.hpp"

namespace sinhreg {
namespace {

using std::numbers::pi;

class KahanSum {
 public:
  void add(double v) {
    const double y = v - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < pi)) throw ConfigurationError("bandwidth delta must lie in (0, pi)");
}

WindowSpec derive_window(WindowKind kind, int n_half, int period_m, double delta) {
  if (kind == WindowKind::None) return WindowSpec::none();
  if (n_half < 2) {
    // beta = 0 here: out of theory, and the window itself is undefined, so
    // not even the override can admit it.
    throw ConfigurationError("plan is out of theory (beta = (N-1)(pi-delta) = 0 at N = 1); "
                             "regularized series need N >= 2");
  }
  const double beta = (n_half - 1) * (pi - delta);
  const double mm = static_cast<double>(period_m);
  if (kind == WindowKind::Sinh) {
    return WindowSpec::sinh(mm * beta, (n_half - 1) * mm);
  }
  return WindowSpec::gaussian((pi - delta) / (2.0 * mm * (n_half - 1)));
}

}  // namespace

std::string_view to_string(Family family) {
  return family == Family::NonPeriodic ? "nonperiodic" : "periodic";
}

Family parse_family(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "nonperiodic" || lower == "non-periodic" || lower == "non_periodic") return Family::NonPeriodic;
  if (lower == "periodic") return Family::Periodic;
  throw ConfigurationError("unknown family '" + std::string(text) + "'");
}

ReconstructionPlan ReconstructionPlan::non_periodic(NodeSet nodes, double delta, WindowKind window,
                                                    PlanOptions options) {
  check_delta(delta);
  ReconstructionPlan plan;
  plan.family_ = Family::NonPeriodic;
  plan.n_half_ = nodes.n_half();
  plan.period_m_ = 1;
  plan.delta_ = delta;
  plan.beta_ = (plan.n_half_ - 1) * (pi - delta);
  plan.window_ = derive_window(window, plan.n_half_, 1, delta);
  plan.out_of_theory_ = nodes.out_of_theory() || (window != WindowKind::None && plan.beta_ < 1.0);
  if (plan.out_of_theory_ && !options.allow_out_of_theory) {
    throw ConfigurationError("plan is out of theory (beta = " + std::to_string(plan.beta_) + " < 1 or L >= 1); "
                             "an explicit override is required");
  }
  plan.locations_.assign(nodes.nodes().begin(), nodes.nodes().end());
  plan.nodes_ = std::move(nodes);
  return plan;
}

ReconstructionPlan ReconstructionPlan::periodic(PeriodicNodeSet nodes, double delta, WindowKind window,
                                                PlanOptions options) {
  check_delta(delta);
  ReconstructionPlan plan;
  plan.family_ = Family::Periodic;
  plan.n_half_ = nodes.n_blocks();
  plan.period_m_ = nodes.period();
  plan.delta_ = delta;
  plan.beta_ = (plan.n_half_ - 1) * (pi - delta);
  plan.window_ = derive_window(window, plan.n_half_, plan.period_m_, delta);
  plan.out_of_theory_ = window != WindowKind::None && plan.beta_ < 1.0;
  if (plan.out_of_theory_ && !options.allow_out_of_theory) {
    throw ConfigurationError("plan is out of theory (beta = " + std::to_string(plan.beta_) + " < 1); "
                             "an explicit override is required");
  }
  plan.locations_ = nodes.locations();
  plan.nodes_ = std::move(nodes);
  return plan;
}

const NodeSet& ReconstructionPlan::nodes() const {
  if (const auto* n = std::get_if<NodeSet>(&nodes_)) return *n;
  throw ConfigurationError("plan has no non-periodic node set");
}

const PeriodicNodeSet& ReconstructionPlan::periodic_nodes() const {
  if (const auto* n = std::get_if<PeriodicNodeSet>(&nodes_)) return *n;
  throw ConfigurationError("plan has no periodic node set");
}

SampleSet take_samples(const ReconstructionPlan& plan, const SignalSpec& signal) {
  SampleSet samples;
  samples.locations = plan.locations();
  samples.values.reserve(samples.locations.size());
  for (double x : samples.locations) samples.values.push_back(signal_eval(signal, x));
  return samples;
}

void check_samples(const ReconstructionPlan& plan, const SampleSet& samples) {
  if (samples.values.size() != samples.locations.size() || samples.locations != plan.locations()) {
    throw ConsistencyError("sample set does not match the plan's nodes");
  }
}

namespace {

double reconstruct_unchecked(const ReconstructionPlan& plan, const SampleSet& samples, double x) {
  if (!std::isfinite(x)) throw DomainError("reconstruct_at: non-finite argument");
  const WindowSpec& window = plan.window();
  const auto& loc = samples.locations;
  const auto& val = samples.values;
  KahanSum sum;
  if (plan.family() == Family::NonPeriodic) {
    const NodeSet& nodes = plan.nodes();
    const int n = plan.n_half();
    for (int j = -n; j <= n; ++j) {
      const auto i = static_cast<std::size_t>(j + n);
      const double g = window_eval(window, x - loc[i]);
      if (g == 0.0) continue;
      sum.add(val[i] * q_basis(nodes, j, x) * g);
    }
  } else {
    const PeriodicNodeSet& nodes = plan.periodic_nodes();
    const int n_blocks = plan.n_half();
    const int period = plan.period_m();
    std::size_t i = 0;
    for (int n = -n_blocks; n <= n_blocks; ++n) {
      for (int m = 1; m <= period; ++m, ++i) {
        const double g = window_eval(window, x - loc[i]);
        if (g == 0.0) continue;
        sum.add(val[i] * psi_basis(nodes, m, n, x) * g);
      }
    }
  }
  return sum.value();
}

}  // namespace

double reconstruct_at(const ReconstructionPlan& plan, const SampleSet& samples, double x) {
  check_samples(plan, samples);
  return reconstruct_unchecked(plan, samples, x);
}

std::vector<double> reconstruct_grid(const ReconstructionPlan& plan, const SampleSet& samples,
                                     std::span<const double> grid, unsigned threads) {
  check_samples(plan, samples);
  std::vector<double> out(grid.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, grid.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = reconstruct_unchecked(plan, samples, grid[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < grid.size(); i += threads) {
          out[i] = reconstruct_unchecked(plan, samples, grid[i]);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

double theoretical_bound_main(Family family, int n_half, int period_m, double delta) {
  const double rate = family == Family::Periodic ? period_m * (pi - delta) : (pi - delta);
  return std::exp(-(n_half - 1) * rate);
}

double theoretical_bound_main(const ReconstructionPlan& plan) {
  return theoretical_bound_main(plan.family(), plan.n_half(), plan.period_m(), plan.bandwidth_delta());
}

}  // namespace sinhreg
