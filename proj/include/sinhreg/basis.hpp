#pragma once

#include <span>
#include <vector>

namespace sinhreg {

struct NodeSetOptions {
  /// Accept L = sup |lambda_j - j| >= 1. The set is then flagged out of theory.
  bool allow_out_of_theory = false;
  /// Construction fails below this pairwise separation.
  double separation_floor = 1e-3;
};

/// Perturbed integer nodes lambda_j, j = -N..N, stored in index order.
///
/// The nodes are paired with the integers j, not sorted: lambda_j = j + eps_j
/// with |eps_j| close to 1 may overtake a neighbour. What matters is that all
/// nodes are pairwise separated.
class NodeSet {
 public:
  NodeSet(std::vector<double> nodes, NodeSetOptions options = {});

  static NodeSet uniform(int n_half);

  int n_half() const noexcept { return n_half_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double lambda(int j) const { return nodes_.at(static_cast<std::size_t>(j + n_half_)); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double min_separation() const noexcept { return min_separation_; }
  double perturbation_bound() const noexcept { return perturbation_bound_; }
  bool out_of_theory() const noexcept { return perturbation_bound_ >= 1.0; }

  /// R_j(lambda_j) sinc(lambda_j - j), the normalization of Q_j.
  double cardinal_denominator(int j) const { return denominators_.at(static_cast<std::size_t>(j + n_half_)); }

 private:
  std::vector<double> nodes_;
  int n_half_ = 0;
  double min_separation_ = 0.0;
  double perturbation_bound_ = 0.0;
  std::vector<double> denominators_;
};

/// Offsets 0 <= t_1 < ... < t_M < M repeated with period M over blocks n = -N..N,
/// tau_{mn} = t_m + n M. Offset indices m are 1-based.
class PeriodicNodeSet {
 public:
  PeriodicNodeSet(std::vector<double> offsets, int n_blocks);

  int period() const noexcept { return static_cast<int>(offsets_.size()); }
  int n_blocks() const noexcept { return n_blocks_; }
  std::span<const double> offsets() const noexcept { return offsets_; }
  double offset(int m) const { return offsets_.at(static_cast<std::size_t>(m - 1)); }
  double tau(int m, int n) const;
  /// All tau_{mn} in (n, m) lexicographic order.
  std::vector<double> locations() const;

  /// prod_{k != m} sin(pi (t_m - t_k) / M)
  double denominator(int m) const { return denominators_.at(static_cast<std::size_t>(m - 1)); }

 private:
  std::vector<double> offsets_;
  int n_blocks_ = 0;
  std::vector<double> denominators_;
};

/// R_j(x) = prod_{k != j} (x - lambda_k) / (x - k). Throws SingularityError within
/// 1e-13 of a pole k != j with lambda_k != k.
double r_factor(const NodeSet& nodes, int j, double x);

/// Lagrangian cardinal function Q_j(x) = R_j(x) sinc(x - j) / (R_j(lambda_j) sinc(lambda_j - j)).
double q_basis(const NodeSet& nodes, int j, double x);

/// Periodic nonuniform cardinal function psi_{mn}(x).
double psi_basis(const PeriodicNodeSet& nodes, int m, int n, double x);

}  // namespace sinhreg
