#include "agreetensor/error.hpp"

namespace agreetensor {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidAxis: return "InvalidAxis";
    case ErrorCode::InvalidTensor: return "InvalidTensor";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::DegenerateChance: return "DegenerateChance";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotDefined: return "NotDefined";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ZeroMarginUnsupported: return "ZeroMarginUnsupported";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace agreetensor
