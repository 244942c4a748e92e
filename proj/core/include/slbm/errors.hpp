#pragma once

#include <stdexcept>
#include <string>

namespace slbm {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration (bad key, missing key, violated invariant).
/// The message carries the offending "section.key" path where applicable.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// An iterative solver (Newton loop or inner fixed-point loop) failed to
/// converge. Carries the time-step index and the worst offending node so
/// a failed run can be diagnosed from the message alone.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& msg, long step, long node, double residual)
      : Error(msg), step_(step), node_(node), residual_(residual) {}

  long step() const { return step_; }
  long node() const { return node_; }
  double residual() const { return residual_; }

private:
  long step_;
  long node_;
  double residual_;
};

/// A diagnostic could not be evaluated (e.g. measuring a 1D error norm on
/// a 2D field, or sampling the diagonal of a non-square field).
class DiagnosticsError : public Error {
public:
  explicit DiagnosticsError(const std::string& msg) : Error(msg) {}
};

} // namespace slbm
