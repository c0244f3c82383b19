#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "krieger/asymptotics.hpp"
#include "krieger/error.hpp"

namespace krieger {
namespace {

using fixtures::klass;
using fixtures::q;
using fixtures::scheme;

std::vector<Rational> exact_values(const ClusterReport& r, bool asymptotic_only = true) {
  std::vector<Rational> out;
  for (const auto& v : r.values(asymptotic_only)) out.push_back(v.exact());
  return out;
}

SeriesDescriptor single_tail(Deviation family, int power = 1) {
  SeriesTerm t;
  t.shape = SeriesTerm::Shape::Deviation;
  t.indices = Progression{1, 1};
  t.family = family;
  t.power = power;
  t.coefficient = Rational(1);
  t.description = "test";
  t.term = [family, power](std::int64_t n) { return std::pow(family.value_at(n, n - 1), power); };
  SeriesDescriptor s;
  s.name = "test";
  s.tails.push_back(std::move(t));
  return s;
}

/// Sum of a tail's terms over its first `count` indices.
double partial_sum(const SeriesTerm& t, std::int64_t count) {
  double s = 0;
  for (std::int64_t k = 0; k < count; ++k) s += t.term(t.indices.start + k * t.indices.step);
  return s;
}

double partial_sum(const SeriesDescriptor& s, std::int64_t count) {
  double total = s.finite_part.value();
  for (const auto& t : s.tails) total += partial_sum(t, count);
  return total;
}

// ---------------------------------------------------------------- clusters

TEST(Clusters, GeometricSymbolTwo) {
  auto v = prepare(fixtures::geometric_constant(q("1/2")));
  EXPECT_EQ(exact_values(ratio_clusters(v, 2)), (std::vector<Rational>{q("1/4")}));
  EXPECT_EQ(exact_values(ratio_clusters(v, 1)), (std::vector<Rational>{q("1/2")}));
}

TEST(Clusters, TwoGeometricClasses) {
  auto s = scheme({klass(Progression{2, 2}, GeometricTail{{}, q("1/2")}),
                   klass(Progression{1, 2}, GeometricTail{{}, q("1/3")})});
  auto r = ratio_clusters(prepare(s), 1);
  EXPECT_EQ(exact_values(r), (std::vector<Rational>{q("1/3"), q("1/2")}));
  // class order does not matter
  std::swap(s.classes[0], s.classes[1]);
  EXPECT_EQ(exact_values(ratio_clusters(prepare(s), 1)), exact_values(r));
}

TEST(Clusters, VanishingDeviation) {
  auto v = prepare(scheme({klass(Progression{1, 1}, TwoPoint{q("1/2"), Deviation::power(2)})}));
  auto r = ratio_clusters(v, 1);
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_NEAR(r.points[0].value.value(), 0.5, 1e-15);
  // sampled attainment: the template values approach the point
  for (std::int64_t n : {1000, 10000, 100000, 1000000}) {
    EXPECT_NEAR(v.float_law(n).ratio(1).value(), 0.5, 1e-6);
  }
}

TEST(Clusters, SymbolFinite) {
  auto v = prepare(fixtures::powers(q("1/2")));
  try {
    ratio_clusters(v, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SymbolFinite);
  }
}

TEST(Clusters, FiniteSymbolsEmptyWhenAllRecur) {
  EXPECT_TRUE(finite_symbol_clusters(prepare(fixtures::powers(q("1/3")))).points.empty());
  EXPECT_TRUE(finite_symbol_clusters(prepare(fixtures::geometric_constant(q("1/2")))).points.empty());
}

TEST(Clusters, FiniteSymbolRatio) {
  // symbol 2 only lives on coordinate 1, with ratio 9/10
  auto s = scheme({klass(Progression{2, 1}, TwoPoint{q("1/2"), {}})}, {{q("5/14"), q("9/28"), q("9/28")}});
  auto r = finite_symbol_clusters(prepare(s));
  EXPECT_EQ(exact_values(r, false), (std::vector<Rational>{q("9/10")}));
  EXPECT_TRUE(exact_values(r).empty());
  EXPECT_FALSE(r.contains_zero);
}

TEST(InfLiminf, Examples) {
  EXPECT_EQ(inf_liminf(prepare(fixtures::geometric_constant(q("1/2")))).exact(), Rational(0));
  EXPECT_EQ(inf_liminf(prepare(fixtures::constant({q("4/7"), q("2/7"), q("1/7")}))).exact(), Rational(1, 4));
  auto mixed = scheme({klass(Progression{1, 2}, TwoPoint{q("1/2"), {}}),
                       klass(Progression{2, 2}, GeometricTail{{}, q("1/3")})});
  EXPECT_EQ(inf_liminf(prepare(mixed)).exact(), Rational(0));
}

TEST(RecurringClusters, GrowingAlphabet) {
  auto v = prepare(fixtures::growing({1, q("1/2"), q("1/4"), q("1/8")}));
  EXPECT_EQ(exact_values(recurring_ratio_clusters(v)), (std::vector<Rational>{q("1/8"), q("1/4"), q("1/2")}));
  EXPECT_EQ(inf_liminf(v).exact(), Rational(1, 8));
  EXPECT_FALSE(recurring_symbol_count(v).has_value());
}

TEST(LambdaClusters, Examples) {
  auto powers = lambda_clusters(prepare(fixtures::powers(q("1/2"))));
  EXPECT_EQ(exact_values(powers.clusters), (std::vector<Rational>{q("1/2")}));
  ASSERT_EQ(powers.groups.size(), 1u);
  EXPECT_TRUE(summability(powers.groups[0].deviations).summable());

  auto zo = lambda_clusters(prepare(fixtures::zero_one()));
  auto values = zo.clusters.values();
  ASSERT_EQ(values.size(), 2u);
  EXPECT_TRUE(values[0].is_zero());
  EXPECT_TRUE(values[1].is_one());
  EXPECT_TRUE(zo.clusters.contains_zero);
  ASSERT_EQ(zo.groups.size(), 2u);
  EXPECT_TRUE(summability(zo.groups[0].deviations).divergent());
  EXPECT_TRUE(summability(zo.groups[1].deviations).summable());

  auto alt = lambda_clusters(prepare(fixtures::interleave(q("1/2"), q("1/3"))));
  EXPECT_EQ(exact_values(alt.clusters), (std::vector<Rational>{q("1/3"), q("1/2")}));
}

TEST(LambdaClusters, MatchesGenericRatioClusters) {
  for (const auto& spec : {fixtures::powers(q("2/3")), fixtures::interleave(q("1/4"), q("4/9"))}) {
    auto v = prepare(spec);
    EXPECT_EQ(exact_values(lambda_clusters(v).clusters), exact_values(ratio_clusters(v, 1)));
  }
}

TEST(LambdaClusters, NotTwoPoint) {
  try {
    lambda_clusters(prepare(fixtures::constant({q("1/2"), q("1/3"), q("1/6")})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotTwoPoint);
  }
}

// -------------------------------------------------------------- summability

TEST(Summability, Geometric) {
  auto s = single_tail(Deviation::geometric(q("1/2")));
  auto v = summability(s);
  ASSERT_TRUE(v.summable());
  EXPECT_EQ(v.sum->exact(), Rational(1));
  EXPECT_LE(partial_sum(s, 200), 1.0 + 1e-15);
}

TEST(Summability, Harmonic) {
  auto s = single_tail(Deviation::power(1));
  EXPECT_TRUE(summability(s).divergent());
  // integral test: sum_{n<=N} 1/n >= log(N+1)
  for (std::int64_t n : {10, 1000, 100000}) EXPECT_GE(partial_sum(s, n), std::log(n + 1.0));
}

TEST(Summability, PSeries) {
  auto s = single_tail(Deviation::power(2));
  auto v = summability(s);
  ASSERT_TRUE(v.summable());
  ASSERT_TRUE(v.bound.has_value());
  EXPECT_LE(*v.bound, 2.0 + 1e-12);
  EXPECT_LE(partial_sum(s, kPartialSumTerms), *v.bound);
  EXPECT_TRUE(summability(single_tail(Deviation::power(1), 2)).summable());
  EXPECT_TRUE(summability(single_tail(Deviation::power(q("1/2")), 2)).divergent());
}

TEST(Summability, OpaqueIsInconclusive) {
  SeriesTerm t;
  t.shape = SeriesTerm::Shape::Opaque;
  t.indices = Progression{1, 1};
  t.description = "opaque";
  t.term = [](std::int64_t n) { return 1.0 / (static_cast<double>(n) * static_cast<double>(n)); };
  SeriesDescriptor s;
  s.tails.push_back(t);
  auto v = summability(s);
  EXPECT_TRUE(v.inconclusive());
  EXPECT_EQ(v.partial_terms, kPartialSumTerms);
  EXPECT_NEAR(*v.partial_sum, M_PI * M_PI / 6, 1e-5);
}

// ----------------------------------------------------------- criteria series

TEST(Series, TypeIExample) {
  auto v = summability(type_i_series(prepare(fixtures::type_i_example())));
  ASSERT_TRUE(v.summable());
  EXPECT_EQ(v.sum->exact(), Rational(1, 2));
  auto s = type_i_series(prepare(fixtures::type_i_example()));
  EXPECT_NEAR(partial_sum(s, 60), 0.5, 1e-15);
}

TEST(Series, ConstantTwoThirdsDiverges) {
  auto v = prepare(fixtures::constant({q("2/3"), q("1/3")}));
  auto law = v.law(1);
  EXPECT_EQ(type_i_summand(law).exact(), Rational(1, 3));
  double expected = (std::pow(1 - std::sqrt(4.0 / 3), 2) + std::pow(1 - std::sqrt(2.0 / 3), 2)) / 2;
  EXPECT_NEAR(type_ii1_summand(law).value(), expected, 1e-15);
  EXPECT_GT(expected, 0);
  // mu0 mu1 (min(|2 - 1|^2, 1) + min(|1/2 - 1|^2, 1))
  EXPECT_EQ(type_iii_summand(law, 1).exact(), Rational(5, 18));
  EXPECT_EQ(type_iii_summand(law, q("1/8")).exact(), Rational(2, 9) * (Rational(1, 8) + Rational(1, 8)));

  for (const auto& s : {type_i_series(v), *type_ii1_series(v), type_iii_series(v, 1)}) {
    EXPECT_TRUE(summability(s).divergent()) << s.name;
    // exceeds B = 1000 well before 10^6 terms
    EXPECT_GT(partial_sum(s, 100000), 1000.0) << s.name;
  }
}

TEST(Series, UniformIsZero) {
  auto v = prepare(fixtures::uniform(3));
  auto ii = summability(*type_ii1_series(v));
  ASSERT_TRUE(ii.summable());
  EXPECT_EQ(ii.sum->exact(), Rational(0));
  auto iii = summability(type_iii_series(v, 1));
  ASSERT_TRUE(iii.summable());
  EXPECT_TRUE(summability(type_i_series(v)).divergent());
}

TEST(Series, TypeIExampleIsNotTypeIII) {
  auto s = type_iii_series(prepare(fixtures::type_i_example()), 1);
  EXPECT_TRUE(summability(s).summable());
  // terms ~ c 2^-n: the partial sums settle
  EXPECT_NEAR(partial_sum(s, 40), partial_sum(s, 80), 1e-12);
}

TEST(Series, InfiniteAlphabetHasNoTypeII1Series) {
  EXPECT_FALSE(type_ii1_series(prepare(fixtures::geometric_constant(q("1/2")))).has_value());
}

TEST(Series, ZeroOneTypeIIIDiverges) {
  auto s = type_iii_series(prepare(fixtures::zero_one()), 1);
  EXPECT_TRUE(summability(s).divergent());
  // harmonic-type growth: doubling N keeps adding a fixed amount
  double a = partial_sum(s, 1 << 10), b = partial_sum(s, 1 << 11);
  double c = partial_sum(s, 1 << 16), d = partial_sum(s, 1 << 17);
  EXPECT_GT(d - c, 0.5 * (b - a));
}

TEST(Series, GrowingAlphabetIsHarmonic) {
  auto v = prepare(fixtures::growing({1, q("1/2"), q("1/4")}));
  auto s = type_iii_series(v, 1);
  EXPECT_TRUE(summability(s).divergent());
  double a = partial_sum(s, 1 << 8), b = partial_sum(s, 1 << 9);
  double c = partial_sum(s, 1 << 12), d = partial_sum(s, 1 << 13);
  EXPECT_GT(d - c, 0.5 * (b - a));
}

}  // namespace
}  // namespace krieger
