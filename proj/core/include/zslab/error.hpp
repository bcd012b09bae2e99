#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zslab {

enum class ErrorCode {
  InvalidGroup,
  InvalidElement,
  InvalidInput,
  EnumerationBudgetExceeded,
  RetryBudgetExceeded,
  SearchBudgetExceeded,
  FormulaUnavailable,
  EmptySet,
  ZeroElement,
  VanishingProduct,
  CosetNotFound,
  PreconditionFailed,
  CheckpointMismatch,
  CorruptCheckpoint,
  Internal,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Partial progress of an interrupted exhaustive search.
struct SearchProgress {
  std::size_t tasks_completed = 0;
  std::size_t tasks_total = 0;
  std::uint64_t nodes = 0;
  int best_length = -1;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, SearchProgress progress);

  const SearchProgress& progress() const noexcept { return progress_; }

 private:
  SearchProgress progress_;
};

}  // namespace zslab
