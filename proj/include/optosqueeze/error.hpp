#pragma once

#include <stdexcept>
#include <string>

namespace optosqueeze {

/// Invalid parameters, drives or configuration. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Impedance matching requested below cooperativity 1.
class UnmatchableError : public ValidationError {
 public:
  UnmatchableError(const std::string& what, double minimal_g_minus)
      : ValidationError(what), minimal_g_minus_(minimal_g_minus) {}

  /// Smallest red-sideband coupling for which matching is possible (C = 1).
  double minimal_g_minus() const noexcept { return minimal_g_minus_; }

 private:
  double minimal_g_minus_;
};

/// Numerical failure: unstable or singular systems, failed brackets. Exit code 3.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Harmonic truncation did not settle before the maximal order.
class ConvergenceError : public SolverError {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : SolverError(what), previous_(previous), last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

}  // namespace optosqueeze
