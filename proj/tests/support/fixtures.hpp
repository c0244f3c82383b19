#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "krieger/rational.hpp"
#include "krieger/scheme.hpp"

namespace krieger::fixtures {

inline Rational q(const char* text) { return parse_rational(text); }

inline std::filesystem::path spec_file(const std::string& name) {
  return std::filesystem::path(KRIEGER_DATA_DIR) / "specs" / name;
}

inline IndexClass klass(IndexSet indices, TemplateLaw law, std::vector<std::size_t> relabel = {}) {
  return IndexClass{std::move(indices), WeightTemplate{std::move(law), std::move(relabel)}};
}

inline SchemeSpec scheme(std::vector<IndexClass> classes, std::vector<std::vector<Rational>> prefix = {}) {
  SchemeSpec s;
  s.prefix = std::move(prefix);
  s.classes = std::move(classes);
  return s;
}

inline SchemeSpec powers(const Rational& lambda) {
  return scheme({klass(Progression{1, 1}, TwoPoint{lambda, {}})});
}

inline SchemeSpec interleave(const Rational& r, const Rational& s) {
  return scheme({klass(Progression{1, 2}, TwoPoint{r, {}}), klass(Progression{2, 2}, TwoPoint{s, {}})});
}

inline SchemeSpec uniform(std::size_t symbols = 2) {
  return scheme({klass(Progression{1, 1}, ExplicitWeights{std::vector<Rational>(symbols, Rational(1, symbols))})});
}

inline SchemeSpec constant(std::vector<Rational> weights) {
  return scheme({klass(Progression{1, 1}, ExplicitWeights{std::move(weights)})});
}

/// mu_n = (1 - 2^(-n-1), 2^(-n-1))
inline SchemeSpec type_i_example() {
  return scheme({klass(Progression{1, 1}, PerturbedVector{{1, 0}, {-1, 1}, Deviation::geometric(q("1/2"), q("1/2"))})});
}

/// even n: lambda_n = 1 - exp(-1/n); odd n: lambda_n = exp(-2^-n)
inline SchemeSpec zero_one() {
  return scheme({klass(Progression{2, 2}, TwoPoint{0, Deviation::power(1)}),
                 klass(Progression{1, 2}, TwoPoint{1, Deviation::geometric(q("1/2"))})});
}

inline SchemeSpec geometric_constant(const Rational& ratio, std::vector<Rational> base = {}) {
  return scheme({klass(Progression{1, 1}, GeometricTail{std::move(base), ratio})});
}

/// |X_n| = n + 1, symbol i has relative weight ratios[min(i, L-1)].
inline SchemeSpec growing(std::vector<Rational> ratios) {
  return scheme({klass(Progression{1, 1}, GrowingAlphabet{std::move(ratios), 1, 1})});
}

struct NamedSpec {
  std::string name;
  SchemeSpec spec;
};

/// Mixed corpus used by the oracle and invariance suites.
inline std::vector<NamedSpec> corpus() {
  return {
      {"powers_1/2", powers(q("1/2"))},
      {"powers_1/3", powers(q("1/3"))},
      {"powers_2/3", powers(q("2/3"))},
      {"powers_3/5", powers(q("3/5"))},
      {"powers_1/4", powers(q("1/4"))},
      {"uniform_2", uniform(2)},
      {"uniform_3", uniform(3)},
      {"interleave_1/2_1/3", interleave(q("1/2"), q("1/3"))},
      {"interleave_1/2_1/4", interleave(q("1/2"), q("1/4"))},
      {"interleave_4/9_2/3", interleave(q("4/9"), q("2/3"))},
      {"constant_3", constant({q("1/2"), q("1/3"), q("1/6")})},
      {"constant_4", constant({q("2/5"), q("3/10"), q("1/5"), q("1/10")})},
      {"type_i", type_i_example()},
      {"zero_one", zero_one()},
      {"geometric_1/2", geometric_constant(q("1/2"))},
      {"geometric_1/3_base", geometric_constant(q("1/3"), {q("1/2"), q("1/4")})},
      {"growing_1_1/2_1/4", growing({1, q("1/2"), q("1/4")})},
      {"powers_1/2_perturbed", scheme({klass(Progression{1, 1}, TwoPoint{q("1/2"), Deviation::power(2)})})},
      {"powers_with_prefix",
       scheme({klass(Progression{3, 1}, TwoPoint{q("1/3"), {}})}, {{q("1/2"), q("1/2")}, {q("3/4"), q("1/8"), q("1/8")}})},
      {"three_classes",
       scheme({klass(Progression{1, 3}, TwoPoint{q("1/2"), {}}), klass(Progression{2, 3}, TwoPoint{q("1/4"), {}}),
               klass(Progression{3, 3}, ExplicitWeights{{q("1/2"), q("1/2")}})})},
      {"perturbed_3",
       scheme({klass(Progression{1, 1}, PerturbedVector{{q("1/2"), q("1/4"), q("1/4")}, {0, 1, -1},
                                                         Deviation::geometric(q("1/2"), q("1/8"))})})},
      {"relabelled_powers", scheme({klass(Progression{1, 1}, TwoPoint{q("1/2"), {}}, {1, 0})})},
  };
}

}  // namespace krieger::fixtures
