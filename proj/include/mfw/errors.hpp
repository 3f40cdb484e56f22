#pragma once

#include <stdexcept>
#include <string>

namespace mfw {

// Invalid arguments are reported with std::invalid_argument.  The types below
// cover the remaining failure classes so callers can map them to exit codes.

struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidPairingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when iterative reference refinement stalls before its target; carries
// the best stationarity measure that was reached.
struct PartialReferenceError : SolverFailure {
  PartialReferenceError(const std::string& msg, double achieved)
      : SolverFailure(msg), achieved_theta(achieved) {}
  double achieved_theta;
};

}  // namespace mfw
