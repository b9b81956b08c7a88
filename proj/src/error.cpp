#include "recopt/error.hpp"

namespace recopt {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NegativeEnergy: return "NegativeEnergy";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::KindConstraintViolated: return "KindConstraintViolated";
        case ErrorCode::InvalidEfficiency: return "InvalidEfficiency";
        case ErrorCode::InvalidPrice: return "InvalidPrice";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::NotAProsumerWithStorage: return "NotAProsumerWithStorage";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::BoundMismatch: return "BoundMismatch";
        case ErrorCode::InternalInfeasible: return "InternalInfeasible";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::Unbounded: return "Unbounded";
        case ErrorCode::IterationLimit: return "IterationLimit";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::LengthMismatch:
        case ErrorCode::NegativeEnergy:
        case ErrorCode::NonFiniteValue:
        case ErrorCode::KindConstraintViolated:
        case ErrorCode::InvalidEfficiency:
        case ErrorCode::InvalidPrice:
        case ErrorCode::DuplicateId:
        case ErrorCode::ParseError:
        case ErrorCode::TooLarge:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::string> entity, std::optional<std::size_t> slot)
    : std::runtime_error(message), code_(code), entity_(std::move(entity)), slot_(slot) {}

}  // namespace recopt
