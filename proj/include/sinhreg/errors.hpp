#pragma once

#include <stdexcept>
#include <string>

namespace sinhreg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise out-of-domain argument.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters for a window, plan, node set or experiment.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class UnsupportedKindError : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

/// Samples that do not belong to the plan they are evaluated with.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Numerical degeneracy: near-coincident nodes, poles hit directly, underflow.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateNodesError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Adaptive quadrature ran out of budget. Carries the best estimate reached.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : NumericalError(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// Random node generation exhausted its redraw budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Too few usable data points for a fit.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace sinhreg
