#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sinhreg/reconstruct.hpp"
#include "sinhreg/signals.hpp"
#include "sinhreg/windows.hpp"

namespace sinhreg {

/// How random nodes are drawn for each trial.
struct NodePolicy {
  double min_sep = 1e-3;
  double max_perturb = 0.999;
  double min_gap = 1e-3;
};

struct ExperimentConfig {
  std::vector<double> deltas;
  std::vector<int> n_values;
  int m_period = 3;
  std::vector<Family> families;
  std::vector<WindowKind> windows;
  int trials = 100;
  std::uint64_t base_seed = 1;
  int grid_points = 201;
  NodePolicy nodes;
  bool allow_out_of_theory = false;

  void validate() const;
};

struct CellResult {
  Family family = Family::NonPeriodic;
  WindowKind window = WindowKind::None;
  double delta = 0.0;
  int n_half = 0;
  int period_m = 1;
  int trials = 0;
  std::vector<double> per_trial_errors;
  double mean_max_error = 0.0;
  double bound_main = 0.0;
  bool out_of_theory = false;
  bool failed = false;
  std::string failure;
};

struct ErrorReport {
  ExperimentConfig config;
  std::vector<CellResult> cells;

  bool any_failed() const;
  const CellResult* find(Family family, WindowKind window, double delta, int n_half) const;
};

/// Equispaced grid of `grid_points` (odd, >= 3) points on [-1, 1]; point i is
/// (i - h) / h with h = (grid_points - 1) / 2, so 201 points give j/100 exactly.
std::vector<double> error_grid(int grid_points);

/// max over the grid of |f(x) - S(x)|.
double max_grid_error(const ReconstructionPlan& plan, const SignalSpec& signal, int grid_points);

/// Runs every (family, delta, N, window) cell for `trials` trials. Trial t
/// draws its nodes from seed base_seed XOR t, so all windows of a cell see
/// the same nodes. Output is independent of `threads` (0 = hardware concurrency).
ErrorReport run_experiment(const ExperimentConfig& config, unsigned threads = 1);

struct CellFilter {
  Family family;
  WindowKind window;
  double delta;
};

inline constexpr double kPlateauFloor = 1e-12;

/// Least-squares slope of ln(mean error) against N-1 over cells above `floor`.
/// The report overload ignores failed and out-of-theory cells, where the
/// exponential rate is not claimed. Throws InsufficientDataError with fewer
/// than three usable cells.
double fit_decay_rate(const ErrorReport& report, const CellFilter& filter, double floor = kPlateauFloor);
double fit_decay_rate(std::span<const int> n_values, std::span<const double> errors,
                      double floor = kPlateauFloor);

}  // namespace sinhreg
