#include "sinhreg/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sinhreg/errors.hpp"
#include "sinhreg/specfun.hpp"

namespace sinhreg {
namespace {

constexpr double kTinyDenominator = 1e-300;

void check_index(const NodeSet& nodes, int j) {
  if (j < -nodes.n_half() || j > nodes.n_half()) {
    throw ConfigurationError("node index " + std::to_string(j) + " out of range");
  }
}

// h_j(x) = R_j(x) sinc(x - j), with every removable singularity cancelled:
//
//   if the nearest integer p to x satisfies p != j and |p| <= N, the pole of
//   R_j at p meets the zero of sinc(x - j) there, and
//     sinc(x - j) / (x - p) = (-1)^{p-j} sinc(x - p) / (x - j),
//   so h_j(x) = (-1)^{p-j} sinc(x - p)/(x - j) * (x - lambda_p) * prod_{k != j,p} (x - lambda_k)/(x - k);
//   otherwise every remaining factor has |x - k| >= 1/2 and
//     h_j(x) = sinc(x - j) * prod_{k != j} (x - lambda_k)/(x - k).
//
// Factors are multiplied in index order -N..N.
double cardinal_numerator(std::span<const double> lambdas, int n_half, int j, double x) {
  const double nearest = std::round(x);
  const bool fuse = nearest != static_cast<double>(j) && std::fabs(nearest) <= n_half;
  const int p = fuse ? static_cast<int>(nearest) : j;
  double product = 1.0;
  for (int k = -n_half; k <= n_half; ++k) {
    if (k == j) continue;
    const double lambda_k = lambdas[static_cast<std::size_t>(k + n_half)];
    if (k == p) {
      product *= (x - lambda_k);
    } else {
      product *= (x - lambda_k) / (x - k);
    }
  }
  if (!fuse) return product * sinc(x - j);
  const double sign = ((p - j) % 2 == 0) ? 1.0 : -1.0;
  return product * sign * sinc(x - p) / (x - j);
}

}  // namespace

NodeSet::NodeSet(std::vector<double> nodes, NodeSetOptions options) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 3 || nodes_.size() % 2 == 0) {
    throw ConfigurationError("NodeSet: need 2N+1 nodes with N >= 1");
  }
  n_half_ = static_cast<int>(nodes_.size() / 2);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i])) throw DomainError("NodeSet: non-finite node");
    const double j = static_cast<double>(static_cast<int>(i) - n_half_);
    perturbation_bound_ = std::max(perturbation_bound_, std::fabs(nodes_[i] - j));
  }
  std::vector<double> sorted = nodes_;
  std::sort(sorted.begin(), sorted.end());
  min_separation_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    min_separation_ = std::min(min_separation_, sorted[i] - sorted[i - 1]);
  }
  if (!(min_separation_ >= options.separation_floor)) {
    throw DegenerateNodesError("NodeSet: minimum separation " + std::to_string(min_separation_) +
                               " below floor " + std::to_string(options.separation_floor));
  }
  if (perturbation_bound_ >= 1.0 && !options.allow_out_of_theory) {
    throw ConfigurationError("NodeSet: perturbation bound L = " + std::to_string(perturbation_bound_) +
                             " >= 1 requires the out-of-theory override");
  }
  denominators_.resize(nodes_.size());
  for (int j = -n_half_; j <= n_half_; ++j) {
    const double d = cardinal_numerator(nodes_, n_half_, j, lambda(j));
    if (!(std::fabs(d) >= kTinyDenominator)) {
      throw DegenerateNodesError("NodeSet: cardinal denominator vanishes at j = " + std::to_string(j));
    }
    denominators_[static_cast<std::size_t>(j + n_half_)] = d;
  }
}

NodeSet NodeSet::uniform(int n_half) {
  if (n_half < 1) throw ConfigurationError("NodeSet: N must be >= 1");
  std::vector<double> nodes;
  for (int j = -n_half; j <= n_half; ++j) nodes.push_back(j);
  return NodeSet(std::move(nodes));
}

double r_factor(const NodeSet& nodes, int j, double x) {
  check_index(nodes, j);
  if (!std::isfinite(x)) throw DomainError("r_factor: non-finite argument");
  const int n = nodes.n_half();
  double product = 1.0;
  for (int k = -n; k <= n; ++k) {
    if (k == j) continue;
    const double lambda_k = nodes.lambda(k);
    if (lambda_k == static_cast<double>(k)) continue;
    if (std::fabs(x - k) < 1e-13) {
      throw SingularityError("r_factor: x = " + std::to_string(x) + " is a pole; use q_basis");
    }
    product *= (x - lambda_k) / (x - k);
  }
  return product;
}

double q_basis(const NodeSet& nodes, int j, double x) {
  check_index(nodes, j);
  if (!std::isfinite(x)) throw DomainError("q_basis: non-finite argument");
  return cardinal_numerator(nodes.nodes(), nodes.n_half(), j, x) / nodes.cardinal_denominator(j);
}

PeriodicNodeSet::PeriodicNodeSet(std::vector<double> offsets, int n_blocks)
    : offsets_(std::move(offsets)), n_blocks_(n_blocks) {
  if (offsets_.empty()) throw ConfigurationError("PeriodicNodeSet: need M >= 1 offsets");
  if (n_blocks_ < 1) throw ConfigurationError("PeriodicNodeSet: need N >= 1 blocks");
  const double span = static_cast<double>(offsets_.size());
  for (std::size_t i = 0; i < offsets_.size(); ++i) {
    const double t = offsets_[i];
    if (!std::isfinite(t) || t < 0.0 || t >= span) {
      throw ConfigurationError("PeriodicNodeSet: offsets must lie in [0, M)");
    }
    if (i > 0 && !(t > offsets_[i - 1])) {
      throw ConfigurationError("PeriodicNodeSet: offsets must be strictly increasing");
    }
  }
  const int count = period();
  denominators_.resize(offsets_.size());
  for (int m = 1; m <= count; ++m) {
    double d = 1.0;
    for (int k = 1; k <= count; ++k) {
      if (k != m) d *= sin_pi((offset(m) - offset(k)) / span);
    }
    if (!(std::fabs(d) >= kTinyDenominator)) {
      throw DegenerateNodesError("PeriodicNodeSet: offsets too close (denominator underflow)");
    }
    denominators_[static_cast<std::size_t>(m - 1)] = d;
  }
}

double PeriodicNodeSet::tau(int m, int n) const {
  if (n < -n_blocks_ || n > n_blocks_) throw ConfigurationError("PeriodicNodeSet: block index out of range");
  return offset(m) + static_cast<double>(n) * static_cast<double>(period());
}

std::vector<double> PeriodicNodeSet::locations() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>((2 * n_blocks_ + 1) * period()));
  for (int n = -n_blocks_; n <= n_blocks_; ++n) {
    for (int m = 1; m <= period(); ++m) out.push_back(tau(m, n));
  }
  return out;
}

double psi_basis(const PeriodicNodeSet& nodes, int m, int n, double x) {
  if (!std::isfinite(x)) throw DomainError("psi_basis: non-finite argument");
  const int period = nodes.period();
  if (m < 1 || m > period) throw ConfigurationError("psi_basis: offset index out of range");
  const double mf = static_cast<double>(period);
  // sin(pi (x - tau_{kn}) / M) = (-1)^n sin(pi (x - t_k) / M): the sines only
  // ever see O(1) arguments, whatever the block index.
  const double block_sign = (n % 2 == 0) ? 1.0 : -1.0;
  double value = 1.0;
  for (int k = 1; k <= period; ++k) {
    if (k != m) value *= block_sign * sin_pi((x - nodes.offset(k)) / mf);
  }
  // M sin(pi u / M) / (pi u) with u = x - tau_{mn}; sinc(u / M) near the node.
  const double u = x - nodes.tau(m, n);
  double own;
  if (std::fabs(u) < 1e-3) {
    own = sinc(u / mf);
  } else {
    own = block_sign * sin_pi((x - nodes.offset(m)) / mf) * mf / (std::numbers::pi * u);
  }
  return value * own / nodes.denominator(m);
}

}  // namespace sinhreg
