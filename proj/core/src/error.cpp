#include "zslab/error.hpp"

namespace zslab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorCode::RetryBudgetExceeded: return "RetryBudgetExceeded";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::FormulaUnavailable: return "FormulaUnavailable";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::VanishingProduct: return "VanishingProduct";
    case ErrorCode::CosetNotFound: return "CosetNotFound";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::CheckpointMismatch: return "CheckpointMismatch";
    case ErrorCode::CorruptCheckpoint: return "CorruptCheckpoint";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

BudgetExceeded::BudgetExceeded(const std::string& what, SearchProgress progress)
    : Error(ErrorCode::SearchBudgetExceeded, what), progress_(progress) {}

}  // namespace zslab
