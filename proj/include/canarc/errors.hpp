#pragma once

#include <stdexcept>
#include <string>

namespace canarc {

enum class ErrorCode {
    DuplicatePoints,
    InvalidArguments,
    NonConvergence,
    LabelingFailure,
    InversionFailure,
    NotPrimitive,
    BudgetExceeded,
    RootsTooClose,
    SelfIntersection,
    DegenerateArc,
    EndpointOnSlit,
    EndpointMismatch,
    PairingMismatch,
    ParseError,
    IoError,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception; carries a machine-readable code plus a
/// one-line human explanation.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace canarc
