#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace alns {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

struct SingularMatrixError : Error {
  using Error::Error;
};

/// Thrown when an iterative solve exhausts its iteration budget. Carries the
/// residual norms observed so far so callers can report partial progress.
struct NonconvergenceError : Error {
  NonconvergenceError(const std::string& what, std::vector<double> history)
      : Error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

}  // namespace alns
