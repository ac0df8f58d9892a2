#pragma once

#include <stdexcept>
#include <string>

namespace wft {

inline constexpr const char* kVersion = "0.1.0";

/// A state left the admissible ball, or a function was evaluated outside
/// its stated domain.
class DomainViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The caller broke an API precondition (bad argument shape or range).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The run left the regime where the construction is valid (oscillation too
/// large, Lax condition broken, ...). Corresponds to initial data that is
/// not small enough.
class AdmissibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant broke: either a bug or a corrupted input artifact.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wft
