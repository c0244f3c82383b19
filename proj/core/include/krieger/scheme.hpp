#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "krieger/rational.hpp"

namespace krieger {

enum class ArithmeticMode { Exact, Float };

std::string_view to_string(ArithmeticMode mode);

/// Vanishing perturbation family eps_n attached to a template.
///
/// Geometric and Power families are indexed by the global coordinate n;
/// a List family is indexed by position inside its index class and is zero
/// after the listed values.
struct Deviation {
  enum class Kind { Zero, Geometric, Power, List };

  Kind kind = Kind::Zero;
  Rational rho;       // Geometric: eps_n = scale * rho^n
  Rational exponent;  // Power:     eps_n = scale * n^(-exponent)
  Rational scale = 1;
  std::vector<Rational> values;

  static Deviation zero() { return {}; }
  static Deviation geometric(Rational rho, Rational scale = 1);
  static Deviation power(Rational exponent, Rational scale = 1);
  static Deviation list(std::vector<Rational> values);

  bool is_zero() const;
  /// True when every eps_n is rational (Power needs an integer exponent).
  bool is_exact() const;
  /// eps at coordinate n, which is the member-th element of its class.
  Real at(std::int64_t n, std::size_t member) const;
  double value_at(std::int64_t n, std::size_t member) const;

  friend bool operator==(const Deviation&, const Deviation&) = default;
};

std::string_view to_string(Deviation::Kind kind);

/// The same finite weight vector at every coordinate of the class.
struct ExplicitWeights {
  std::vector<Rational> weights;
  friend bool operator==(const ExplicitWeights&, const ExplicitWeights&) = default;
};

/// Infinite alphabet: explicit base weights b_0..b_{m-1}, then symbol m+j
/// carries t(1-q)q^j where t = 1 - sum(b) is the tail mass.
struct GeometricTail {
  std::vector<Rational> base;
  Rational q;
  friend bool operator==(const GeometricTail&, const GeometricTail&) = default;
};

/// Two symbols with weights (1, lambda_n) / (1 + lambda_n), where
/// lambda_n = lambda * exp(-eps_n) for lambda > 0 and 1 - exp(-eps_n) for
/// lambda = 0.
struct TwoPoint {
  Rational lambda;
  Deviation deviation;
  friend bool operator==(const TwoPoint&, const TwoPoint&) = default;
};

/// weights_n = limit + eps_n * direction, direction summing to zero.
struct PerturbedVector {
  std::vector<Rational> limit;
  std::vector<Rational> direction;
  Deviation deviation;
  friend bool operator==(const PerturbedVector&, const PerturbedVector&) = default;
};

/// Finite alphabets of size slope * n + offset. Symbol i has relative weight
/// ratios[min(i, L-1)]; the last ratio forms a plateau over every remaining
/// symbol and must be the smallest.
struct GrowingAlphabet {
  std::vector<Rational> ratios;
  std::int64_t slope = 1;
  std::int64_t offset = 0;
  friend bool operator==(const GrowingAlphabet&, const GrowingAlphabet&) = default;
};

using TemplateLaw = std::variant<ExplicitWeights, GeometricTail, TwoPoint, PerturbedVector, GrowingAlphabet>;

struct WeightTemplate {
  TemplateLaw law;
  /// Observed symbol relabel[i] carries the template's i-th weight. Symbols
  /// at or beyond relabel.size() are not moved. Empty means identity.
  std::vector<std::size_t> relabel;

  friend bool operator==(const WeightTemplate&, const WeightTemplate&) = default;
};

std::string_view kind_name(const TemplateLaw& law);

struct Progression {
  std::int64_t start = 1;
  std::int64_t step = 1;
  friend bool operator==(const Progression&, const Progression&) = default;
};

struct IndexList {
  std::vector<std::int64_t> members;  // strictly increasing
  friend bool operator==(const IndexList&, const IndexList&) = default;
};

/// Coordinates (1-indexed) covered by one class.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(Progression p) : set_(p) {}  // NOLINT(implicit)
  IndexSet(IndexList l) : set_(std::move(l)) {}  // NOLINT(implicit)

  bool is_finite() const { return std::holds_alternative<IndexList>(set_); }
  bool contains(std::int64_t n) const;
  /// Position of n inside the set, if present.
  std::optional<std::size_t> position(std::int64_t n) const;
  /// The k-th member (0-based).
  std::int64_t member(std::size_t k) const;
  std::optional<std::size_t> size() const;
  std::int64_t first() const { return member(0); }

  const Progression* progression() const { return std::get_if<Progression>(&set_); }
  const IndexList* list() const { return std::get_if<IndexList>(&set_); }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::variant<Progression, IndexList> set_;
};

struct IndexClass {
  IndexSet indices;
  WeightTemplate weights;
  friend bool operator==(const IndexClass&, const IndexClass&) = default;
};

/// An infinite product measure: explicit vectors for coordinates 1..P, then
/// index classes covering every coordinate after P exactly once.
struct SchemeSpec {
  std::optional<ArithmeticMode> mode;  // unset: derived from the templates
  std::vector<std::vector<Rational>> prefix;
  std::vector<IndexClass> classes;

  friend bool operator==(const SchemeSpec&, const SchemeSpec&) = default;
};

/// Eigenvalue data of an ITPFI factor. Same layout as a scheme; spectra may
/// be unnormalized and may contain zero eigenvalues.
struct FactorSpec {
  std::vector<std::vector<Rational>> spectra;
  std::vector<IndexClass> classes;

  friend bool operator==(const FactorSpec&, const FactorSpec&) = default;
};

/// The weight vector of one coordinate, possibly with infinitely many
/// symbols. Symbols 0..head-1 are explicit; then an optional plateau of
/// equal weights; then an optional geometric tail.
class CoordinateLaw {
 public:
  struct Plateau {
    Real weight;
    double log_weight = 0;
    std::size_t count = 0;
  };
  struct Tail {
    Real mass;   // total weight of the tail
    Rational q;  // tail symbol j carries mass * (1-q) * q^j
  };

  CoordinateLaw() = default;
  CoordinateLaw(std::vector<Real> head, std::vector<double> head_log, std::optional<Plateau> plateau,
                std::optional<Tail> tail, std::vector<std::size_t> relabel = {});

  /// nullopt for infinite alphabets.
  std::optional<std::size_t> alphabet_size() const;
  bool is_exact() const;

  Real weight(std::size_t symbol) const;
  double log_weight(std::size_t symbol) const;
  /// weight(symbol) / weight(0)
  Real ratio(std::size_t symbol) const;

  const std::vector<Real>& head() const { return head_; }
  const std::vector<double>& head_log() const { return head_log_; }
  const std::optional<Plateau>& plateau() const { return plateau_; }
  const std::optional<Tail>& tail() const { return tail_; }
  const std::vector<std::size_t>& relabel() const { return relabel_; }

 private:
  std::size_t canonical(std::size_t symbol) const;
  Real canonical_weight(std::size_t index) const;
  double canonical_log_weight(std::size_t index) const;

  std::vector<Real> head_;
  std::vector<double> head_log_;
  std::optional<Plateau> plateau_;
  std::optional<Tail> tail_;
  std::vector<std::size_t> relabel_;
  std::vector<std::size_t> inverse_;
};

/// Evaluates a template at coordinate n, the member-th element of its class.
/// Float mode yields approximate weights even for rational templates.
CoordinateLaw evaluate(const WeightTemplate& weights, std::int64_t n, std::size_t member,
                       ArithmeticMode mode = ArithmeticMode::Exact);

/// True when some coordinate of the template has irrational weights.
bool is_transcendental(const WeightTemplate& weights);

/// Cached facts about one index class.
struct ClassInfo {
  bool infinite = false;                     // index set is infinite
  std::optional<std::size_t> alphabet_size;  // nullopt: infinite or growing
  bool unbounded_alphabet = false;           // alphabet sizes are unbounded along the class
  bool exact = true;                         // every weight is rational
};

/// A spec whose invariants have been checked.
class ValidatedScheme {
 public:
  const SchemeSpec& spec() const { return spec_; }
  ArithmeticMode mode() const { return mode_; }
  std::int64_t prefix_length() const { return static_cast<std::int64_t>(spec_.prefix.size()); }
  const std::vector<ClassInfo>& info() const { return info_; }
  bool normalized() const { return normalized_; }

  /// Class index owning coordinate n (nullopt for prefix coordinates) and
  /// the position of n inside that class.
  std::optional<std::pair<std::size_t, std::size_t>> locate(std::int64_t n) const;
  CoordinateLaw law(std::int64_t n) const;
  /// Same as law(n) but always in float arithmetic; cheap for large n.
  CoordinateLaw float_law(std::int64_t n) const;

  /// Infinitely many coordinates have alphabets larger than any bound.
  bool unbounded_alphabets() const;

 private:
  friend ValidatedScheme validate(const SchemeSpec& spec);
  SchemeSpec spec_;
  ArithmeticMode mode_ = ArithmeticMode::Exact;
  std::vector<ClassInfo> info_;
  bool normalized_ = false;
};

/// Checks coverage, disjointness, positivity, normalization and template
/// parameter ranges. Throws Error with CoverageGap, Overlap,
/// NonPositiveWeight, NotNormalized or InvalidTemplate.
ValidatedScheme validate(const SchemeSpec& spec);

/// Permutation record: output symbol j was input symbol permutation[j].
struct ClassPermutation {
  std::size_t source_class = 0;  // index into the input spec's classes
  std::vector<std::size_t> permutation;
};

struct NormalizedScheme {
  SchemeSpec spec;
  std::vector<std::vector<std::size_t>> prefix_permutations;
  std::vector<ClassPermutation> class_permutations;  // parallel to spec.classes
};

/// Sorts every coordinate's weights descending and rescales explicit vectors
/// to sum one. Perturbed classes whose ordering changes along the class have
/// their early coordinates split off as single-coordinate classes.
NormalizedScheme normalize(const SchemeSpec& spec);

/// validate(normalize(spec).spec)
ValidatedScheme prepare(const SchemeSpec& spec);

FactorSpec scheme_to_factor(const SchemeSpec& spec);
SchemeSpec factor_to_scheme(const FactorSpec& factor);

struct Truncation {
  std::size_t symbols = 0;  // symbols 0..symbols-1 are kept
  Real retained_mass;       // unrenormalized
};

/// Shortest prefix of the (descending) weight list holding mass >= 1 - delta.
/// Finite alphabets are kept whole. Requires delta in (0, 1/2].
Truncation truncate_alphabet(const CoordinateLaw& law, const Real& delta);

}  // namespace krieger
