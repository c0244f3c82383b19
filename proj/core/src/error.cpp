#include "krieger/error.hpp"

namespace krieger {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::CoverageGap: return "CoverageGap";
    case Errc::Overlap: return "Overlap";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::InvalidTemplate: return "InvalidTemplate";
    case Errc::BudgetUnreachable: return "BudgetUnreachable";
    case Errc::SymbolFinite: return "SymbolFinite";
    case Errc::NotTwoPoint: return "NotTwoPoint";
    case Errc::DomainError: return "DomainError";
    case Errc::ZeroInSet: return "ZeroInSet";
    case Errc::BranchError: return "BranchError";
    case Errc::InconclusiveEvidence: return "InconclusiveEvidence";
    case Errc::WordLengthMismatch: return "WordLengthMismatch";
    case Errc::SymbolOutOfRange: return "SymbolOutOfRange";
    case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Errc::BlockTooLarge: return "BlockTooLarge";
    case Errc::OverlappingBlocks: return "OverlappingBlocks";
    case Errc::InsufficientSamples: return "InsufficientSamples";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace krieger
