#pragma once

#include <stdexcept>

namespace gt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An oracle answer contradicted what the caller already knew about a set.
struct ContractViolation : Error {
  using Error::Error;
};

struct DegenerateSplit : Error {
  using Error::Error;
};

/// A membership query carried an epoch that no longer matches the item state.
struct StaleExpression : Error {
  using Error::Error;
};

struct EstimationFailure : Error {
  using Error::Error;
};

struct DataCorruption : Error {
  using Error::Error;
};

/// Rejected parameters or configuration (names the offending field).
struct InvalidArgument : Error {
  using Error::Error;
};

}  // namespace gt
