#pragma once

#include <stdexcept>
#include <string>

namespace incrprox {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent problem/run configuration (dimension mismatch, bad variant,
/// missing field, ...).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Out-of-domain numeric parameter (nonpositive stepsize, gamma, ...).
class ParameterError : public Error {
public:
  using Error::Error;
};

/// An inner iterative solver hit its step cap before certifying `tol`.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string &what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

class EstimationError : public Error {
public:
  using Error::Error;
};

} // namespace incrprox
