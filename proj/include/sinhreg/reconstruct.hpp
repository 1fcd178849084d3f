#pragma once

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "sinhreg/basis.hpp"
#include "sinhreg/signals.hpp"
#include "sinhreg/windows.hpp"

namespace sinhreg {

enum class Family { NonPeriodic, Periodic };

std::string_view to_string(Family family);
/// Accepts "nonperiodic"/"non-periodic" and "periodic" (case-insensitive).
Family parse_family(std::string_view text);

struct PlanOptions {
  /// Permit plans violating beta >= 1 or L < 1. They are flagged out of theory.
  bool allow_out_of_theory = false;
};

/// Everything needed to evaluate one regularized sampling series.
///
/// beta = (N-1)(pi-delta). The window is derived from the family:
///   non-periodic sinh:     beta,    half-width N-1
///   periodic sinh:         M beta,  half-width (N-1) M
///   non-periodic Gaussian: exp(-(pi-delta)/(2N-2) x^2)
///   periodic Gaussian:     exp(-(pi-delta)/(2M(N-1)) x^2)
class ReconstructionPlan {
 public:
  static ReconstructionPlan non_periodic(NodeSet nodes, double delta, WindowKind window,
                                         PlanOptions options = {});
  static ReconstructionPlan periodic(PeriodicNodeSet nodes, double delta, WindowKind window,
                                     PlanOptions options = {});

  Family family() const noexcept { return family_; }
  const WindowSpec& window() const noexcept { return window_; }
  int n_half() const noexcept { return n_half_; }
  /// M for periodic plans, 1 otherwise.
  int period_m() const noexcept { return period_m_; }
  double bandwidth_delta() const noexcept { return delta_; }
  double beta() const noexcept { return beta_; }
  bool out_of_theory() const noexcept { return out_of_theory_; }

  const NodeSet& nodes() const;
  const PeriodicNodeSet& periodic_nodes() const;
  /// Sample locations in summation order: j ascending, or (n, m) lexicographic.
  const std::vector<double>& locations() const noexcept { return locations_; }

 private:
  ReconstructionPlan() = default;

  Family family_ = Family::NonPeriodic;
  WindowSpec window_;
  std::variant<std::monostate, NodeSet, PeriodicNodeSet> nodes_;
  std::vector<double> locations_;
  int n_half_ = 0;
  int period_m_ = 1;
  double delta_ = 0.0;
  double beta_ = 0.0;
  bool out_of_theory_ = false;
};

struct SampleSet {
  std::vector<double> locations;
  std::vector<double> values;
};

SampleSet take_samples(const ReconstructionPlan& plan, const SignalSpec& signal);

/// Throws ConsistencyError unless `samples` were taken at exactly the plan's nodes.
void check_samples(const ReconstructionPlan& plan, const SampleSet& samples);

/// Evaluates the regularized series at x. Terms are accumulated in summation
/// order with a compensated sum; terms whose window value is exactly zero are
/// skipped without evaluating the basis.
double reconstruct_at(const ReconstructionPlan& plan, const SampleSet& samples, double x);

/// reconstruct_at over a grid. Points are split across `threads` workers
/// (0 = hardware concurrency); the result does not depend on the split.
std::vector<double> reconstruct_grid(const ReconstructionPlan& plan, const SampleSet& samples,
                                     std::span<const double> grid, unsigned threads = 1);

/// exp(-(N-1)(pi-delta)) for non-periodic plans, exp(-(N-1) M (pi-delta)) for periodic ones.
double theoretical_bound_main(const ReconstructionPlan& plan);
double theoretical_bound_main(Family family, int n_half, int period_m, double delta);

}  // namespace sinhreg
