#pragma once

#include <stdexcept>
#include <string>

namespace roc {

/// Raised when an interior-point solve does not reach an optimal status.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Measurement data that no density matrix can reproduce.
class InfeasibleData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A randomized search exhausted its trial budget.
class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace roc
