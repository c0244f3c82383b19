#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace krieger {

enum class Errc {
  CoverageGap,
  Overlap,
  NonPositiveWeight,
  NotNormalized,
  InvalidTemplate,
  BudgetUnreachable,
  SymbolFinite,
  NotTwoPoint,
  DomainError,
  ZeroInSet,
  BranchError,
  InconclusiveEvidence,
  WordLengthMismatch,
  SymbolOutOfRange,
  SearchBudgetExceeded,
  BlockTooLarge,
  OverlappingBlocks,
  InsufficientSamples,
  ParseError,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace krieger
