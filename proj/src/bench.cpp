#include "sinhreg/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include "sinhreg/errors.hpp"

namespace sinhreg {
namespace {

using std::numbers::pi;

bool cell_out_of_theory(Family, WindowKind window, int n_half, double delta) {
  // Node draws keep L <= max_perturb < 1, so only beta can violate the hypotheses.
  return window != WindowKind::None && (n_half - 1) * (pi - delta) < 1.0;
}

ReconstructionPlan make_trial_plan(const ExperimentConfig& config, const CellResult& cell, std::uint64_t seed) {
  PlanOptions options;
  options.allow_out_of_theory = config.allow_out_of_theory;
  if (cell.family == Family::NonPeriodic) {
    NodeSet nodes = generate_nodes(cell.n_half, seed, config.nodes.min_sep, config.nodes.max_perturb);
    return ReconstructionPlan::non_periodic(std::move(nodes), cell.delta, cell.window, options);
  }
  PeriodicNodeSet nodes = generate_periodic_offsets(cell.period_m, cell.n_half, seed, config.nodes.min_gap);
  return ReconstructionPlan::periodic(std::move(nodes), cell.delta, cell.window, options);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigurationError("experiment: trials must be >= 1");
  if (grid_points < 3 || grid_points % 2 == 0) {
    throw ConfigurationError("experiment: grid_points must be odd and >= 3");
  }
  if (deltas.empty() || n_values.empty() || families.empty() || windows.empty()) {
    throw ConfigurationError("experiment: deltas, n_values, families and windows must be non-empty");
  }
  for (double d : deltas) {
    if (!(d > 0.0 && d < pi)) throw ConfigurationError("experiment: every delta must lie in (0, pi)");
  }
  for (int n : n_values) {
    if (n < 1) throw ConfigurationError("experiment: every N must be >= 1");
  }
  if (m_period < 1) throw ConfigurationError("experiment: M must be >= 1");
}

bool ErrorReport::any_failed() const {
  return std::any_of(cells.begin(), cells.end(), [](const CellResult& c) { return c.failed; });
}

const CellResult* ErrorReport::find(Family family, WindowKind window, double delta, int n_half) const {
  for (const auto& c : cells) {
    if (c.family == family && c.window == window && c.delta == delta && c.n_half == n_half) return &c;
  }
  return nullptr;
}

std::vector<double> error_grid(int grid_points) {
  if (grid_points < 3 || grid_points % 2 == 0) throw ConfigurationError("grid_points must be odd and >= 3");
  const int h = (grid_points - 1) / 2;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(grid_points));
  for (int i = -h; i <= h; ++i) grid.push_back(static_cast<double>(i) / h);
  return grid;
}

double max_grid_error(const ReconstructionPlan& plan, const SignalSpec& signal, int grid_points) {
  const auto grid = error_grid(grid_points);
  const SampleSet samples = take_samples(plan, signal);
  const auto approx = reconstruct_grid(plan, samples, grid, 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::fabs(signal_eval(signal, grid[i]) - approx[i]));
  }
  return worst;
}

ErrorReport run_experiment(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  ErrorReport report;
  report.config = config;
  for (Family family : config.families) {
    for (double delta : config.deltas) {
      for (int n : config.n_values) {
        for (WindowKind window : config.windows) {
          CellResult cell;
          cell.family = family;
          cell.window = window;
          cell.delta = delta;
          cell.n_half = n;
          cell.period_m = family == Family::Periodic ? config.m_period : 1;
          cell.trials = config.trials;
          cell.bound_main = theoretical_bound_main(family, n, cell.period_m, delta);
          cell.out_of_theory = cell_out_of_theory(family, window, n, delta);
          cell.per_trial_errors.assign(static_cast<std::size_t>(config.trials), 0.0);
          if (window != WindowKind::None && n < 2) {
            cell.failed = true;
            cell.failure = "regularized series need N >= 2";
          } else if (cell.out_of_theory && !config.allow_out_of_theory) {
            cell.failed = true;
            cell.failure = "out of theory (beta < 1) without override";
          }
          report.cells.push_back(std::move(cell));
        }
      }
    }
  }

  const std::size_t trials = static_cast<std::size_t>(config.trials);
  const std::size_t n_tasks = report.cells.size() * trials;
  std::vector<std::string> task_failure(n_tasks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= n_tasks) return;
      CellResult& cell = report.cells[task / trials];
      if (cell.failed) continue;
      const std::size_t trial = task % trials;
      try {
        const ReconstructionPlan plan = make_trial_plan(config, cell, trial_seed(config.base_seed, trial));
        const SignalSpec signal = SignalSpec::test_function(cell.delta);
        cell.per_trial_errors[trial] = max_grid_error(plan, signal, config.grid_points);
      } catch (const std::exception& e) {
        task_failure[task] = e.what();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    CellResult& cell = report.cells[c];
    if (cell.failed) continue;
    for (std::size_t t = 0; t < trials; ++t) {
      if (!task_failure[c * trials + t].empty()) {
        cell.failed = true;
        cell.failure = "trial " + std::to_string(t) + ": " + task_failure[c * trials + t];
        break;
      }
    }
    if (cell.failed) continue;
    double sum = 0.0;
    for (double e : cell.per_trial_errors) sum += e;
    cell.mean_max_error = sum / static_cast<double>(trials);
  }
  return report;
}

double fit_decay_rate(std::span<const int> n_values, std::span<const double> errors, double floor) {
  if (n_values.size() != errors.size()) throw ConfigurationError("fit_decay_rate: length mismatch");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i] > floor && std::isfinite(errors[i])) {
      xs.push_back(n_values[i] - 1.0);
      ys.push_back(std::log(errors[i]));
    }
  }
  if (xs.size() < 3) {
    throw InsufficientDataError("fit_decay_rate: need at least 3 cells above the floor, have " +
                                std::to_string(xs.size()));
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw InsufficientDataError("fit_decay_rate: all cells share one N");
  return sxy / sxx;
}

double fit_decay_rate(const ErrorReport& report, const CellFilter& filter, double floor) {
  std::vector<int> ns;
  std::vector<double> errs;
  for (const auto& c : report.cells) {
    if (c.failed || c.out_of_theory) continue;
    if (c.family != filter.family || c.window != filter.window || c.delta != filter.delta) continue;
    ns.push_back(c.n_half);
    errs.push_back(c.mean_max_error);
  }
  return fit_decay_rate(ns, errs, floor);
}

}  // namespace sinhreg
