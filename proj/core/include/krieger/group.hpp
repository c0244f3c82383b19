#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "krieger/rational.hpp"

namespace krieger {

inline constexpr std::int64_t kDefaultDenominatorBound = 1'000'000;

/// log a / log b = p / q with p, q coprime and positive.
struct Commensurability {
  std::int64_t p = 1;
  std::int64_t q = 1;
  friend bool operator==(const Commensurability&, const Commensurability&) = default;
};

/// Exact: the search provably covered every possible relation.
/// BoundedDenominator: only relations with p, q <= bound were excluded.
enum class Confidence { Exact, BoundedDenominator };

std::string_view to_string(Confidence c);

struct CommensurabilityResult {
  std::optional<Commensurability> relation;
  Confidence confidence = Confidence::BoundedDenominator;
  std::int64_t bound = kDefaultDenominatorBound;
  int convergents_checked = 0;
};

/// Searches the continued-fraction convergents of log a / log b for p/q with
/// max(p, q) <= bound and a^q = b^p. Exact inputs are verified exactly
/// (a = c^p, b = c^q for a rational c); approximate inputs need
/// |q log a - p log b| <= 1e-9 max(|log a|, |log b|). Throws DomainError unless a, b lie in (0, 1).
CommensurabilityResult commensurability(const Real& a, const Real& b,
                                        std::int64_t bound = kDefaultDenominatorBound);

std::optional<Commensurability> commensurable(const Real& a, const Real& b,
                                              std::int64_t bound = kDefaultDenominatorBound);

struct PairEvidence {
  Real generator;  // running generator before the pair was folded in
  Real point;
  std::optional<Commensurability> relation;
};

struct GroupStructure {
  enum class Kind { Trivial, Cyclic, Dense };

  Kind kind = Kind::Trivial;
  Real generator;  // Cyclic: the generator in (0,1)
  std::vector<PairEvidence> evidence;
  Confidence confidence = Confidence::Exact;
  std::int64_t bound = kDefaultDenominatorBound;
};

std::string_view to_string(GroupStructure::Kind kind);

/// Closed multiplicative group generated by points in (0,1]. Ones are
/// ignored; Error ZeroInSet when 0 is present, DomainError outside [0,1].
GroupStructure mult_group(const std::vector<Real>& points, std::int64_t bound = kDefaultDenominatorBound);

}  // namespace krieger
