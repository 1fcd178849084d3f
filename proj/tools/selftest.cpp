#include "selftest.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>

#include "sinhreg/basis.hpp"
#include "sinhreg/bench.hpp"
#include "sinhreg/reconstruct.hpp"
#include "sinhreg/signals.hpp"
#include "sinhreg/specfun.hpp"
#include "sinhreg/windows.hpp"

namespace sinhreg::cli {
namespace {

using std::numbers::pi;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Each check returns its worst deviation; the check passes when it is <= tol.
CheckResult measured(const std::string& name, double tol, const std::function<double()>& body) {
  CheckResult r{name, false, {}};
  try {
    const double worst = body();
    r.passed = worst <= tol;
    r.detail = "max deviation " + sci(worst) + " (tol " + sci(tol) + ")";
  } catch (const std::exception& e) {
    r.detail = std::string("threw: ") + e.what();
  }
  return r;
}

double cardinal_nonperiodic() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const NodeSet nodes = generate_nodes(8, seed, 1e-3, 0.9);
    for (int j = -8; j <= 8; ++j) {
      for (int k = -8; k <= 8; ++k) {
        const double expect = j == k ? 1.0 : 0.0;
        worst = std::max(worst, std::fabs(q_basis(nodes, j, nodes.lambda(k)) - expect));
      }
    }
  }
  return worst;
}

double cardinal_periodic() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const PeriodicNodeSet pn = generate_periodic_offsets(3, 5, seed, 1e-3);
    for (int m = 1; m <= 3; ++m) {
      for (int n = -5; n <= 5; ++n) {
        for (int k = 1; k <= 3; ++k) {
          for (int l = -5; l <= 5; ++l) {
            const double expect = (m == k && n == l) ? 1.0 : 0.0;
            worst = std::max(worst, std::fabs(psi_basis(pn, m, n, pn.tau(k, l)) - expect));
          }
        }
      }
    }
  }
  return worst;
}

double uniform_reduction() {
  const int n = 8;
  const NodeSet nodes = NodeSet::uniform(n);
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = -n + 2.0 * n * i / 400.0;
    for (int j = -n; j <= n; ++j) worst = std::max(worst, std::fabs(q_basis(nodes, j, x) - sinc(x - j)));
  }
  return worst;
}

double window_normalization() {
  double worst = 0.0;
  for (double beta : {1.0, 5.0, 40.0, 2000.0}) {
    const WindowSpec w = WindowSpec::sinh(beta, 10.0);
    worst = std::max(worst, std::fabs(window_eval(w, 0.0) - 1.0));
    // Values must stay in [0, 1] on the support.
    for (int i = 0; i <= 100; ++i) {
      const double g = window_eval(w, i / 10.0);
      if (g < 0.0) worst = std::max(worst, -g);
      if (g > 1.0) worst = std::max(worst, g - 1.0);
    }
  }
  worst = std::max(worst, std::fabs(window_eval(WindowSpec::gaussian(0.3), 0.0) - 1.0));
  worst = std::max(worst, std::fabs(window_eval(WindowSpec::none(), 0.0) - 1.0));
  return worst;
}

double fourier_vs_quadrature() {
  const WindowSpec w = WindowSpec::sinh(8.0, 9.0);
  double worst = 0.0;
  for (double freq : {0.0, 0.5, 0.89, 1.2, 2.0, 3.3}) {
    auto integrand = [&](double x) { return window_eval(w, x) * std::cos(freq * x); };
    const double q = 2.0 * integrate_adaptive(integrand, 0.0, 9.0, 1e-13).value / std::sqrt(2.0 * pi);
    worst = std::max(worst, std::fabs(window_fourier_closed_form(w, freq) - q));
  }
  return worst;
}

double node_exactness() {
  const double delta = pi / 2.0;
  const SignalSpec f = SignalSpec::test_function(delta);
  const ReconstructionPlan plan =
      ReconstructionPlan::non_periodic(generate_nodes(12, 3, 1e-3, 0.999), delta, WindowKind::Sinh);
  const SampleSet samples = take_samples(plan, f);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.locations.size(); ++i) {
    const double x = samples.locations[i];
    if (std::fabs(x) >= plan.n_half() - 1) continue;
    worst = std::max(worst, std::fabs(reconstruct_at(plan, samples, x) - samples.values[i]));
  }
  return worst;
}

}  // namespace

std::vector<CheckResult> run_selftest() {
  return {
      measured("cardinal-nonperiodic", 1e-10, cardinal_nonperiodic),
      measured("cardinal-periodic", 1e-10, cardinal_periodic),
      measured("uniform-reduction", 1e-13, uniform_reduction),
      measured("window-normalization", 1e-15, window_normalization),
      measured("window-fourier-vs-quadrature", 1e-8, fourier_vs_quadrature),
      measured("node-exactness", 1e-12, node_exactness),
  };
}

bool print_selftest(const std::vector<CheckResult>& results, std::ostream& out) {
  bool ok = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    ok = ok && r.passed;
  }
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  out << (ok ? "selftest: all " + std::to_string(results.size()) + " checks passed"
             : "selftest: " + std::to_string(failed) + " of " + std::to_string(results.size()) + " checks failed")
      << '\n';
  return ok;
}

}  // namespace sinhreg::cli
