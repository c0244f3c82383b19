#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "krieger/scheme.hpp"

namespace krieger {

/// Where a cluster point comes from. Finite-data points summarize values that
/// occur at finitely many coordinates; they do not survive a change of
/// finitely many coordinates.
enum class ClusterSource { Asymptotic, FiniteData };

struct ClusterPoint {
  Real value;
  std::vector<std::size_t> classes;  // classes realizing the point
  ClusterSource source = ClusterSource::Asymptotic;
};

struct ClusterReport {
  std::vector<ClusterPoint> points;  // ascending, distinct
  /// Infinitely many cluster points (an infinite alphabet inside one class);
  /// `points` then lists only the leading ones and 0 is a limit point.
  bool unbounded = false;
  bool contains_zero = false;
  Real liminf;  // of the underlying set viewed as a sequence
  std::vector<std::string> notes;

  std::vector<Real> values(bool asymptotic_only = true) const;
};

/// Cluster points of mu_m(i) / mu_m(0) over coordinates m whose alphabet holds
/// symbol i. Requires i >= 1 occurring at infinitely many coordinates
/// (Error SymbolFinite otherwise). Symbol 0 has constant ratio 1 and is
/// excluded everywhere.
ClusterReport ratio_clusters(const ValidatedScheme& scheme, std::size_t symbol);

/// Values mu_m(i) / mu_m(0) for symbols i occurring at finitely many
/// coordinates. Exact grouping in rational mode, 1e-9 grouping in float mode.
ClusterReport finite_symbol_clusters(const ValidatedScheme& scheme);

/// Union of ratio_clusters over every recurring symbol i >= 1.
ClusterReport recurring_ratio_clusters(const ValidatedScheme& scheme);

/// inf over recurring symbols i >= 1 of liminf of the ratio sequence.
Real inf_liminf(const ValidatedScheme& scheme);

/// Symbols occurring at infinitely many coordinates: nullopt means all.
std::optional<std::size_t> recurring_symbol_count(const ValidatedScheme& scheme);

// ----------------------------------------------------------------- series

/// Closed-form description of the tail of a non-negative series along one
/// infinite index class.
struct SeriesTerm {
  enum class Shape {
    Zero,              // every term vanishes
    ConstantPositive,  // terms stay above `constant` > 0
    Deviation,         // terms ~ coefficient * |eps_n|^power
    Harmonic,          // terms ~ c / n with c > 0
    Opaque,            // no rule applies
  };

  Shape shape = Shape::Zero;
  Progression indices;
  Deviation family;
  int power = 1;
  /// Set when the term equals coefficient * |eps_n|^power exactly.
  std::optional<Rational> coefficient;
  Real constant;
  std::string description;
  /// Numeric value of the term at global coordinate n.
  std::function<double(std::int64_t)> term;
};

std::string_view to_string(SeriesTerm::Shape shape);

struct SeriesDescriptor {
  std::string name;
  Real finite_part;  // sum over the prefix and finite classes
  std::vector<SeriesTerm> tails;
};

struct SummabilityVerdict {
  enum class Kind { Summable, Divergent, Inconclusive, NotApplicable };

  Kind kind = Kind::Inconclusive;
  std::optional<Real> sum;      // exact or closed-form value
  std::optional<double> bound;  // upper bound on the full sum
  std::optional<double> partial_sum;
  std::int64_t partial_terms = 0;
  std::string rule;
  std::string evidence;

  bool summable() const { return kind == Kind::Summable; }
  bool divergent() const { return kind == Kind::Divergent; }
  bool inconclusive() const { return kind == Kind::Inconclusive; }
};

std::string_view to_string(SummabilityVerdict::Kind kind);

inline constexpr std::int64_t kPartialSumTerms = 1'000'000;

/// Applies the rule table: Zero and geometric/list deviations are summable,
/// power deviations iff power * exponent > 1, harmonic and constant tails
/// diverge, anything else is summed numerically and reported Inconclusive.
SummabilityVerdict summability(const SeriesDescriptor& series);

/// Summands of the three criteria at one coordinate. Infinite alphabets are
/// truncated once the remaining mass falls below 1e-16.
Real type_i_summand(const CoordinateLaw& law);
Real type_ii1_summand(const CoordinateLaw& law);
Real type_iii_summand(const CoordinateLaw& law, const Rational& C);

/// sum_n (1 - max_a mu_n(a))
SeriesDescriptor type_i_series(const ValidatedScheme& scheme);
/// sum_n sum_a |1 - sqrt(mu_n(a) |X_n|)|^2 / |X_n|; nullopt when some
/// alphabet is infinite.
std::optional<SeriesDescriptor> type_ii1_series(const ValidatedScheme& scheme);
/// sum_n sum_{i,j} mu_n(i) mu_n(j) min(|mu_n(i)/mu_n(j) - 1|^2, C)
SeriesDescriptor type_iii_series(const ValidatedScheme& scheme, const Rational& C);

// ---------------------------------------------------------------- two-point

struct LambdaGroup {
  Real limit;
  std::vector<std::size_t> classes;
  /// Deviations eps_n in lambda_n = limit * exp(-eps_n) (or 1 - exp(-eps_n)
  /// for limit 0) along the classes converging to `limit`.
  SeriesDescriptor deviations;
};

struct LambdaReport {
  ClusterReport clusters;
  std::vector<LambdaGroup> groups;  // ascending by limit
};

/// Limits of lambda_n = mu_n(1) / mu_n(0) over the infinite classes, which must
/// all be two-symbol classes (Error NotTwoPoint otherwise).
LambdaReport lambda_clusters(const ValidatedScheme& scheme);

}  // namespace krieger
