#include "canarc/errors.hpp"

namespace canarc {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DuplicatePoints: return "DuplicatePoints";
        case ErrorCode::InvalidArguments: return "InvalidArguments";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::LabelingFailure: return "LabelingFailure";
        case ErrorCode::InversionFailure: return "InversionFailure";
        case ErrorCode::NotPrimitive: return "NotPrimitive";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::RootsTooClose: return "RootsTooClose";
        case ErrorCode::SelfIntersection: return "SelfIntersection";
        case ErrorCode::DegenerateArc: return "DegenerateArc";
        case ErrorCode::EndpointOnSlit: return "EndpointOnSlit";
        case ErrorCode::EndpointMismatch: return "EndpointMismatch";
        case ErrorCode::PairingMismatch: return "PairingMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace canarc
