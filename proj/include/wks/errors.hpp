#pragma once

#include <stdexcept>
#include <string>

namespace wks {

/// Malformed input: out-of-range levels or points, dimension mismatches.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An exhaustive routine would exceed its configured work budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The revealed extension level makes the pattern infeasible for the
/// request history. This is a protocol violation by the caller.
struct InfeasibleReveal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal invariant of the serving algorithm broke (an empty
/// feasible-label set, or an unserved request). Never expected on valid input.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct EmptyQ : InvariantViolation {
    using InvariantViolation::InvariantViolation;
};

namespace detail {
inline void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument(what);
}
}  // namespace detail

}  // namespace wks
