#pragma once

#include <stdexcept>
#include <string>

namespace stumpboost {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation that needs at least one sample was handed none.
struct EmptyDatasetError : Error {
  using Error::Error;
};

// Caller violated a documented precondition.
struct PreconditionError : Error {
  using Error::Error;
};

// Non-finite values, domain violations, failed internal cross-checks,
// or an inner solver that did not converge.
struct NumericError : Error {
  using Error::Error;
};

// A 1-D line-search objective decreases monotonically; no finite minimizer.
struct UnboundedError : NumericError {
  using NumericError::NumericError;
};

// Search direction with zero empirical second moment.
struct DegenerateDirectionError : PreconditionError {
  using PreconditionError::PreconditionError;
};

// Bad config file or instance file. line == 0 means "no specific line"
// (e.g. a missing required key).
struct ConfigError : Error {
  int line;
  ConfigError(int line_no, const std::string& msg)
      : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace stumpboost
