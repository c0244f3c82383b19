#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "krieger/rational.hpp"
#include "krieger/scheme.hpp"

namespace krieger {

using Word = std::vector<std::size_t>;

inline const Rational kDefaultTruncation{1, 1'000'000};

/// One coordinate of a block: the symbols kept after truncation, with their
/// true (not renormalized) weights.
struct BlockCoordinate {
  std::int64_t n = 0;
  CoordinateLaw law;
  std::vector<std::size_t> symbols;  // observed labels, descending weight
  std::vector<Real> weights;
  std::vector<double> log_weights;
  Real retained_mass;
};

/// Coordinates start+1 .. start+length.
struct Block {
  std::int64_t start = 0;
  std::size_t length = 0;
  Rational delta;
  bool exact = true;
  std::vector<BlockCoordinate> coordinates;

  /// Number of (x, y) word pairs over the kept alphabets, saturating.
  std::uint64_t pair_count() const;
};

/// Error DomainError when length is zero, start negative or delta outside (0, 1/2].
Block make_block(const ValidatedScheme& scheme, std::int64_t start, std::size_t length,
                 const Rational& delta = kDefaultTruncation);

/// D(x -> y) = prod mu_k(y_k) / mu_k(x_k), exact when the weights are.
struct CocycleValue {
  Real ratio;
  double log = 0;
};

/// Words cover coordinates start+1 .. start+|x|. Errors WordLengthMismatch,
/// SymbolOutOfRange.
CocycleValue log_cocycle(const ValidatedScheme& scheme, std::int64_t start, const Word& x, const Word& y);
CocycleValue log_cocycle(const ValidatedScheme& scheme, const Block& block, const Word& x, const Word& y);

struct Witness {
  std::int64_t start = 0;
  std::size_t length = 0;
  Word x;
  Word y;
  Real ratio;  // D(x -> y)
  double log = 0;
  Real target;
  Real tolerance;

  /// |D - target|
  Real distance() const { return (ratio - target).abs(); }
};

/// Recomputes D from the scheme and checks |D - target| < tolerance.
bool replay(const ValidatedScheme& scheme, const Witness& witness);

enum class SearchMode {
  Ratio,      // |D - r| < eps
  ZeroOrOne,  // min(|D - 1|, |D|) < eps with x != y
};

struct WitnessQuery {
  Real target = 1;
  Real eps = Rational(1, 1000);
  std::int64_t start = 0;
  std::size_t max_block = 12;
  Rational delta = kDefaultTruncation;
  SearchMode mode = SearchMode::Ratio;
  /// Fixes x; must cover max_block coordinates.
  std::optional<Word> anchor;
  std::uint64_t state_cap = 100'000'000;
};

struct WitnessSearchResult {
  std::optional<Witness> witness;
  std::size_t blocks_searched = 0;
  std::uint64_t states = 0;
  /// Closest value at the last block searched when nothing qualified.
  std::optional<Real> closest_distance;
  std::string scope;  // bounds under which an empty result holds
};

/// Meet-in-the-middle over half blocks. Returns the closest witness on the
/// shortest block [start+1, start+K], K <= max_block, that admits one.
/// Errors DomainError (bad target, eps or anchor), SearchBudgetExceeded.
WitnessSearchResult witness_search(const ValidatedScheme& scheme, const WitnessQuery& query);

struct OracleHit {
  Real target;
  Real distance;
  Real ratio;
  Word x;
  Word y;
};

/// Exhaustive minimum of |target - D(x, y)| over every word pair of the
/// block. Error BlockTooLarge when the pair count exceeds pair_cap.
std::vector<OracleHit> brute_force_block(const Block& block, const std::vector<Real>& targets,
                                         std::uint64_t pair_cap = 10'000'000);

/// Witness for r1 * r2 on the union of two disjoint blocks. Coordinates
/// between the blocks carry symbol 0 in both words. Error OverlappingBlocks.
Witness compose_witnesses(const Witness& first, const Witness& second);

}  // namespace krieger
