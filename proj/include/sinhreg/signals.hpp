#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "sinhreg/basis.hpp"

namespace sinhreg {

enum class SignalKind { TestFunction, SincPure, Custom };

/// A bandlimited test signal with bandwidth delta in (0, pi).
///
/// TestFunction:
///   f(x) = (2 sin(delta x)/x + sin(delta (x-1))/(x-1)) / sqrt(pi (5 delta + sin delta))
/// SincPure:
///   f(x) = sin(delta x) / (delta x)
/// Custom: any callable; bandlimitedness is the caller's responsibility.
struct SignalSpec {
  SignalKind kind = SignalKind::TestFunction;
  double bandwidth_delta = 0.0;
  std::function<double(double)> custom;

  static SignalSpec test_function(double delta);
  static SignalSpec sinc_pure(double delta);
  static SignalSpec custom_function(double delta, std::function<double(double)> f);

  void validate() const;
};

double signal_eval(const SignalSpec& spec, double x);

/// The generator behind every random draw: 64-bit Mersenne Twister (std::mt19937_64),
/// whose output sequence is fixed by the C++ standard.
using Rng = std::mt19937_64;

/// Uniform double in the open interval (0, 1) from the top 53 bits of one draw.
/// Used instead of std::uniform_real_distribution, whose algorithm is unspecified.
double uniform_open01(Rng& rng);

/// Seed for trial `trial` of an experiment: base_seed XOR trial.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial);

inline constexpr int kMaxRedraws = 1000;

/// lambda_j = j + eps_j, eps_j ~ U(-max_perturb, max_perturb), whole set redrawn
/// until the pairwise separation is at least min_sep.
NodeSet generate_nodes(int n_half, std::uint64_t seed, double min_sep, double max_perturb);

/// t_m ~ U[0, M) sorted, redrawn until all cyclic gaps are at least min_gap.
PeriodicNodeSet generate_periodic_offsets(int period_m, int n_blocks, std::uint64_t seed, double min_gap);

}  // namespace sinhreg
