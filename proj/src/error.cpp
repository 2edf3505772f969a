#include "singmod/error.hpp"

namespace singmod {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroLeadingTerm: return "ZeroLeadingTerm";
    case ErrorKind::OutOfWindow: return "OutOfWindow";
    case ErrorKind::UnsupportedDiscriminant: return "UnsupportedDiscriminant";
    case ErrorKind::UnsupportedLevel: return "UnsupportedLevel";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::CacheInvalid: return "CacheInvalid";
    case ErrorKind::NonIntegralResult: return "NonIntegralResult";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::NonTrivialKernel: return "NonTrivialKernel";
    case ErrorKind::InconsistentRepresentations: return "InconsistentRepresentations";
    case ErrorKind::LiftNotFound: return "LiftNotFound";
    case ErrorKind::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorKind::NotNearInteger: return "NotNearInteger";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

bool Error::is_precondition() const noexcept {
    switch (kind_) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::ZeroLeadingTerm:
    case ErrorKind::OutOfWindow:
    case ErrorKind::UnsupportedDiscriminant:
    case ErrorKind::UnsupportedLevel:
    case ErrorKind::Inconsistent:
    case ErrorKind::CacheInvalid:
        return true;
    default:
        return false;
    }
}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

} // namespace singmod
