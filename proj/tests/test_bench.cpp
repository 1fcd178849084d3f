#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sinhreg/bench.hpp"
#include "sinhreg/errors.hpp"
#include "sinhreg/report.hpp"

using namespace sinhreg;
using std::numbers::pi;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.deltas = {pi / 2.0};
  cfg.n_values = {6, 9, 12};
  cfg.families = {Family::NonPeriodic, Family::Periodic};
  cfg.windows = {WindowKind::None, WindowKind::Gaussian, WindowKind::Sinh};
  cfg.trials = 4;
  cfg.base_seed = 17;
  return cfg;
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("error grid") {
  const auto g = error_grid(201);
  REQUIRE(g.size() == 201);
  CHECK(g.front() == -1.0);
  CHECK(g[100] == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[137] == 37.0 / 100.0);
  CHECK_THROWS_AS(error_grid(200), ConfigurationError);
  CHECK_THROWS_AS(error_grid(1), ConfigurationError);
}

TEST_CASE("max grid error is zero when the grid is a subset of the nodes") {
  // Uniform nodes contain the 3-point grid {-1, 0, 1}.
  const auto plan = ReconstructionPlan::non_periodic(NodeSet::uniform(5), pi / 2.0, WindowKind::Sinh);
  CHECK(max_grid_error(plan, SignalSpec::test_function(pi / 2.0), 3) <= 1e-15);
}

TEST_CASE("unwindowed error at N = 6 with perturbed nodes is of order 1e-2 to 1e-1") {
  double sum = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto plan = ReconstructionPlan::non_periodic(generate_nodes(6, seed, 1e-3, 0.999), pi / 2.0, WindowKind::None);
    sum += max_grid_error(plan, SignalSpec::test_function(pi / 2.0), 201);
  }
  const double mean = sum / 20.0;
  CHECK(mean > 1e-2);
  CHECK(mean < 1.0);
  // Uniform nodes truncate far more gently.
  const auto uniform = ReconstructionPlan::non_periodic(NodeSet::uniform(6), pi / 2.0, WindowKind::None);
  CHECK(max_grid_error(uniform, SignalSpec::test_function(pi / 2.0), 201) < mean);
}

TEST_CASE("config validation") {
  auto cfg = small_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigurationError);
  cfg = small_config();
  cfg.deltas = {pi};
  CHECK_THROWS_AS(cfg.validate(), ConfigurationError);
  cfg = small_config();
  cfg.grid_points = 100;
  CHECK_THROWS_AS(cfg.validate(), ConfigurationError);
  cfg = small_config();
  cfg.windows.clear();
  CHECK_THROWS_AS(run_experiment(cfg), ConfigurationError);
}

TEST_CASE("experiment report structure and determinism") {
  const auto cfg = small_config();
  const ErrorReport a = run_experiment(cfg, 1);
  const ErrorReport b = run_experiment(cfg, 3);
  REQUIRE(a.cells.size() == 2 * 3 * 3);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const auto& c = a.cells[i];
    CHECK_FALSE(c.failed);
    REQUIRE(c.per_trial_errors.size() == 4);
    double sum = 0.0;
    for (double e : c.per_trial_errors) {
      CHECK(e >= 0.0);
      sum += e;
    }
    CHECK(c.mean_max_error == sum / 4.0);
    CHECK(c.per_trial_errors == b.cells[i].per_trial_errors);
    CHECK(c.bound_main == theoretical_bound_main(c.family, c.n_half, c.period_m, c.delta));
  }
  std::ostringstream csv_a, csv_b;
  write_cells_csv(csv_a, a, {{"k", "v"}});
  write_cells_csv(csv_b, b, {{"k", "v"}});
  CHECK(csv_a.str() == csv_b.str());
  CHECK(csv_a.str().rfind("# k: v\nfamily,window,delta,N,M,trials,mean_max_error,bound_main,out_of_theory\n", 0) == 0);
}

TEST_CASE("sinh dominates gaussian, which dominates no window") {
  const ErrorReport r = run_experiment(small_config(), 0);
  for (int n : {9, 12}) {
    const auto* s = r.find(Family::NonPeriodic, WindowKind::Sinh, pi / 2.0, n);
    const auto* g = r.find(Family::NonPeriodic, WindowKind::Gaussian, pi / 2.0, n);
    const auto* o = r.find(Family::NonPeriodic, WindowKind::None, pi / 2.0, n);
    REQUIRE(s != nullptr);
    CHECK(s->mean_max_error * 10.0 <= g->mean_max_error);
    CHECK(g->mean_max_error < o->mean_max_error);
  }
  const auto* ps = r.find(Family::Periodic, WindowKind::Sinh, pi / 2.0, 6);
  const auto* pg = r.find(Family::Periodic, WindowKind::Gaussian, pi / 2.0, 6);
  CHECK(ps->mean_max_error < pg->mean_max_error);
}

TEST_CASE("out-of-theory cells fail without the override and are flagged with it") {
  ExperimentConfig cfg;
  cfg.deltas = {5.0 * pi / 6.0};
  cfg.n_values = {2, 3};
  cfg.families = {Family::Periodic};
  cfg.windows = {WindowKind::None, WindowKind::Sinh};
  cfg.trials = 2;
  const ErrorReport strict = run_experiment(cfg);
  const auto* low = strict.find(Family::Periodic, WindowKind::Sinh, cfg.deltas[0], 2);
  CHECK(low->out_of_theory);
  CHECK(low->failed);
  CHECK(strict.any_failed());
  CHECK_FALSE(strict.find(Family::Periodic, WindowKind::None, cfg.deltas[0], 2)->failed);
  CHECK(failure_log(strict).find("out of theory") != std::string::npos);

  cfg.allow_out_of_theory = true;
  const ErrorReport loose = run_experiment(cfg);
  CHECK_FALSE(loose.any_failed());
  CHECK(loose.find(Family::Periodic, WindowKind::Sinh, cfg.deltas[0], 2)->out_of_theory);
  CHECK_FALSE(loose.find(Family::Periodic, WindowKind::Sinh, cfg.deltas[0], 3)->out_of_theory);
  std::ostringstream csv;
  write_cells_csv(csv, loose, {});
  CHECK(csv.str().find("periodic,sinh,2.61799e+00,2,3,2,") != std::string::npos);
  CHECK(csv.str().find(",1\n") != std::string::npos);
}

TEST_CASE("fit_decay_rate") {
  std::vector<int> ns{2, 3, 4, 5, 6};
  std::vector<double> errs;
  for (int n : ns) errs.push_back(std::exp(-2.0 * (n - 1)));
  CHECK(fit_decay_rate(ns, errs) == doctest::Approx(-2.0).epsilon(1e-12));
  // Plateau cells are ignored.
  ns.push_back(30);
  errs.push_back(1e-14);
  CHECK(fit_decay_rate(ns, errs) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_decay_rate(std::vector<int>{1, 2}, std::vector<double>{1e-3, 1e-4}), InsufficientDataError);
  CHECK_THROWS_AS(fit_decay_rate(std::vector<int>{1, 2, 3}, std::vector<double>{1e-13, 1e-14, 1e-3}),
                  InsufficientDataError);
}

TEST_CASE("fitted rates order sinh ahead of gaussian") {
  ExperimentConfig cfg;
  cfg.deltas = {pi / 2.0};
  cfg.n_values = {6, 9, 12, 15};
  cfg.families = {Family::NonPeriodic};
  cfg.windows = {WindowKind::Gaussian, WindowKind::Sinh};
  cfg.trials = 5;
  const ErrorReport r = run_experiment(cfg, 0);
  const double sinh = fit_decay_rate(r, {Family::NonPeriodic, WindowKind::Sinh, pi / 2.0});
  const double gauss = fit_decay_rate(r, {Family::NonPeriodic, WindowKind::Gaussian, pi / 2.0});
  CHECK(sinh < gauss);
  CHECK(std::fabs(sinh / (-(pi / 2.0)) - 1.0) <= 0.2);
}

TEST_CASE("errors decrease with N and stay within a constant of the main bound") {
  ExperimentConfig cfg;
  cfg.deltas = {pi / 2.0, 2.0 * pi / 3.0, 5.0 * pi / 6.0};
  cfg.families = {Family::NonPeriodic, Family::Periodic};
  cfg.windows = {WindowKind::Gaussian, WindowKind::Sinh};
  cfg.trials = 10;
  cfg.base_seed = 3;
  cfg.allow_out_of_theory = true;
  for (Family family : cfg.families) {
    ExperimentConfig one = cfg;
    one.families = {family};
    one.n_values = family == Family::NonPeriodic ? std::vector<int>{6, 9, 12, 15, 18, 21, 24}
                                                 : std::vector<int>{2, 3, 4, 5, 6, 7, 8};
    const ErrorReport r = run_experiment(one, 0);
    for (double delta : cfg.deltas) {
      for (WindowKind w : cfg.windows) {
        // Nonincreasing until the plateau band, single steps may rise by up to 2x.
        double prev = std::numeric_limits<double>::infinity();
        for (int n : one.n_values) {
          const double e = r.find(family, w, delta, n)->mean_max_error;
          CAPTURE(n);
          CAPTURE(delta);
          if (prev > 1e-12) CHECK(e <= 2.0 * prev);
          prev = e;
        }
      }
      double c = 0.0;
      for (int n : one.n_values) {
        const auto* cell = r.find(family, WindowKind::Sinh, delta, n);
        if (cell->out_of_theory || cell->mean_max_error <= kPlateauFloor) continue;
        c = std::max(c, cell->mean_max_error / cell->bound_main);
      }
      CAPTURE(delta);
      CHECK(c > 0.0);
      CHECK(c <= 1e4);
    }
  }
}

TEST_CASE("report writers") {
  auto cfg = small_config();
  cfg.families = {Family::NonPeriodic};
  const ErrorReport np = run_experiment(cfg);
  cfg.families = {Family::Periodic};
  cfg.n_values = {2, 3};
  const ErrorReport per = run_experiment(cfg);

  std::ostringstream table;
  write_table_csv(table, np, per, pi / 2.0, {{"table", "1"}});
  const std::string t = table.str();
  CHECK(t.find("N,no,Gaussian,sinh,N,periodic-no,periodic-Gaussian,periodic-sinh,out_of_theory\n") !=
        std::string::npos);
  // Three non-periodic rows; the third has no periodic partner.
  CHECK(t.find("\n12,") != std::string::npos);
  CHECK(t.find(",,,,0\n") != std::string::npos);

  std::ostringstream fig;
  write_figure_csv(fig, np, Family::NonPeriodic, {});
  CHECK(fig.str().find("delta,N,log10_no,log10_gaussian,log10_sinh,log10_bound\n") == 0);

  std::ostringstream json;
  write_report_json(json, np, {{"tool", "x"}});
  CHECK(json.str().find("\"per_trial_errors\"") != std::string::npos);
  CHECK(json.str().find("\"base_seed\": 17") != std::string::npos);

  CHECK(format_sci(1.74580e-7) == "1.74580e-07");
  CHECK(format_sci(std::nan("")) == "nan");
}

TEST_CASE("table experiment presets") {
  const auto np = table_experiment(Family::NonPeriodic, Profile::Full, 1);
  CHECK(np.n_values.front() == 6);
  CHECK(np.n_values.back() == 39);
  CHECK(np.n_values.size() == 12);
  CHECK(np.trials == 100);
  const auto p = table_experiment(Family::Periodic, Profile::Ci, 1);
  CHECK(p.n_values.front() == 2);
  CHECK(p.n_values.back() == 13);
  CHECK(p.m_period == 3);
  CHECK(p.trials == 10);
  CHECK(parse_profile("ci") == Profile::Ci);
  CHECK_THROWS_AS(parse_profile("fast"), ConfigurationError);
}

}  // TEST_SUITE
