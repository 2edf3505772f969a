#pragma once

#include <stdexcept>
#include <string>

namespace singmod {

enum class ErrorKind {
    // Caller-side problems: bad arguments or requests outside a computed window.
    InvalidArgument,
    ZeroLeadingTerm,
    OutOfWindow,
    UnsupportedDiscriminant,
    UnsupportedLevel,
    Inconsistent,
    CacheInvalid,
    // Broken mathematical expectations. These indicate a bug or a precision failure.
    NonIntegralResult,
    NoSolution,
    NonTrivialKernel,
    InconsistentRepresentations,
    LiftNotFound,
    PrecisionExceeded,
    NotNearInteger,
    InvariantViolation,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

    /// True when the error is attributable to the request rather than to an
    /// internal consistency failure.
    bool is_precondition() const noexcept;

  private:
    ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

} // namespace singmod
