#pragma once

#include <stdexcept>
#include <string>

namespace dcm {

/// Instance file or in-memory instance fails model validation.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The fractional relaxation has no feasible solution; the standing model
/// assumption is violated.
struct InfeasibleInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

/// An internal invariant failed; signals an engine bug, never expected input.
struct InternalInvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Exhaustive audit search would exceed the configured cap.
struct SearchTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An allocation failed the approximate-feasibility certificate.
struct ApproxFeasibilityViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dcm
