#include "anyonsim/error.hpp"

namespace anyonsim {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::CoincidenceAtStep: return "CoincidenceAtStep";
    case ErrorCode::TurnTooLargeAtStep: return "TurnTooLargeAtStep";
    case ErrorCode::InvalidLattice: return "InvalidLattice";
    case ErrorCode::EndpointOffLattice: return "EndpointOffLattice";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::AntiparallelAmbiguity: return "AntiparallelAmbiguity";
    case ErrorCode::EndpointsNotClosedOrExchanged:
      return "EndpointsNotClosedOrExchanged";
    case ErrorCode::RoundingInconsistency: return "RoundingInconsistency";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::IncompleteMap: return "IncompleteMap";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotExchangeKernel: return "NotExchangeKernel";
    case ErrorCode::NoDominantClass: return "NoDominantClass";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> step)
    : std::runtime_error(message), code_(code), step_(step) {}

}  // namespace anyonsim
