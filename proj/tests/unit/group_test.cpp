#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "krieger/error.hpp"
#include "krieger/group.hpp"
#include "oracles.hpp"

namespace krieger {
namespace {

using fixtures::q;

TEST(Commensurable, Examples) {
  EXPECT_EQ(commensurable(Real(q("1/4")), Real(q("1/2"))), (Commensurability{2, 1}));
  EXPECT_FALSE(commensurable(Real(q("1/2")), Real(q("1/3"))).has_value());
  EXPECT_EQ(commensurable(Real(q("3/7")), Real(q("3/7"))), (Commensurability{1, 1}));
  EXPECT_EQ(commensurable(Real(q("8/27")), Real(q("4/9"))), (Commensurability{3, 2}));
}

TEST(Commensurable, SymmetricUnderSwap) {
  const std::vector<Rational> pts{q("1/2"), q("1/4"), q("1/8"), q("1/3"), q("1/9"), q("4/9"), q("2/3"), q("8/27"), q("3/5")};
  for (const auto& a : pts) {
    for (const auto& b : pts) {
      auto ab = commensurable(Real(a), Real(b));
      auto ba = commensurable(Real(b), Real(a));
      ASSERT_EQ(ab.has_value(), ba.has_value()) << a << " " << b;
      if (ab) {
        EXPECT_EQ(ab->p, ba->q);
        EXPECT_EQ(ab->q, ba->p);
      }
      auto oracle = oracles::commensurability(a, b);
      ASSERT_EQ(ab.has_value(), oracle.has_value()) << a << " " << b;
      if (ab) {
        EXPECT_EQ((std::pair<long, long>(ab->p, ab->q)), *oracle);
      }
    }
  }
}

TEST(Commensurable, ApproximateInputs) {
  auto r = commensurable(Real::approximate(std::exp(-1.0)), Real::approximate(std::exp(-2.5)));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, (Commensurability{2, 5}));
  EXPECT_FALSE(commensurable(Real::approximate(std::exp(-1.0)), Real::approximate(std::exp(-M_PI))).has_value());
}

TEST(Commensurable, Certificate) {
  // exact inputs: exponents of any relation are bounded by the bit sizes
  auto r = commensurability(Real(q("1/2")), Real(q("1/3")));
  EXPECT_EQ(r.confidence, Confidence::Exact);
  EXPECT_EQ(r.bound, kDefaultDenominatorBound);
  EXPECT_GT(r.convergents_checked, 0);
  auto f = commensurability(Real::approximate(0.5), Real::approximate(1.0 / 3));
  EXPECT_FALSE(f.relation.has_value());
  EXPECT_EQ(f.confidence, Confidence::BoundedDenominator);
}

TEST(Commensurable, Domain) {
  EXPECT_THROW(commensurable(Real(1), Real(q("1/2"))), Error);
  EXPECT_THROW(commensurable(Real(0), Real(q("1/2"))), Error);
  EXPECT_THROW(commensurable(Real(q("3/2")), Real(q("1/2"))), Error);
}

TEST(MultGroup, Examples) {
  EXPECT_EQ(mult_group({Real(1)}).kind, GroupStructure::Kind::Trivial);
  EXPECT_EQ(mult_group({}).kind, GroupStructure::Kind::Trivial);
  auto c = mult_group({Real(q("1/2")), Real(q("1/8"))});
  ASSERT_EQ(c.kind, GroupStructure::Kind::Cyclic);
  EXPECT_EQ(c.generator.exact(), Rational(1, 2));
  auto d = mult_group({Real(q("1/2")), Real(q("1/3"))});
  EXPECT_EQ(d.kind, GroupStructure::Kind::Dense);
  EXPECT_EQ(d.confidence, Confidence::Exact);
  EXPECT_EQ(mult_group({Real::approximate(0.5), Real::approximate(1.0 / 3)}).confidence,
            Confidence::BoundedDenominator);
}

TEST(MultGroup, GcdOfExponents) {
  for (const char* lam : {"1/2", "1/3", "2/3", "3/5"}) {
    const Rational l = q(lam);
    for (int a = 1; a <= 20; ++a) {
      for (int b = 1; b <= 20; ++b) {
        auto g = mult_group({Real(power(l, a)), Real(power(l, b))});
        ASSERT_EQ(g.kind, GroupStructure::Kind::Cyclic) << lam << " " << a << " " << b;
        EXPECT_EQ(g.generator.exact(), power(l, std::gcd(a, b))) << lam << " " << a << " " << b;
      }
    }
  }
}

TEST(MultGroup, ThreeGenerators) {
  auto g = mult_group({Real(power(q("2/3"), 6)), Real(power(q("2/3"), 10)), Real(power(q("2/3"), 15))});
  ASSERT_EQ(g.kind, GroupStructure::Kind::Cyclic);
  EXPECT_EQ(g.generator.exact(), Rational(2, 3));
}

TEST(MultGroup, InvariantUnderOnesAndDuplicates) {
  const std::vector<std::vector<Rational>> sets{
      {q("1/4"), q("1/8")}, {q("1/2"), q("1/3")}, {q("4/9")}, {q("9/25"), q("27/125")}};
  for (const auto& set : sets) {
    std::vector<Real> base(set.begin(), set.end());
    auto ref = mult_group(base);
    auto with_one = base;
    with_one.insert(with_one.begin() + 1, Real(1));
    auto dup = base;
    dup.push_back(base.front());
    for (const auto& variant : {with_one, dup}) {
      auto g = mult_group(variant);
      EXPECT_EQ(g.kind, ref.kind);
      if (g.kind == GroupStructure::Kind::Cyclic) {
        EXPECT_EQ(g.generator, ref.generator);
      }
    }
  }
}

TEST(MultGroup, CyclicReproducesInputs) {
  const std::vector<Real> pts{Real(q("1/16")), Real(q("1/64")), Real(q("1/4"))};
  auto g = mult_group(pts);
  ASSERT_EQ(g.kind, GroupStructure::Kind::Cyclic);
  for (const auto& x : pts) {
    long k = std::lround(x.log() / g.generator.log());
    EXPECT_EQ(power(g.generator.exact(), k), x.exact());
  }
  auto f = mult_group({Real::approximate(std::exp(-0.6)), Real::approximate(std::exp(-1.5))});
  ASSERT_EQ(f.kind, GroupStructure::Kind::Cyclic);
  EXPECT_NEAR(f.generator.log(), -0.3, 1e-9);
}

TEST(MultGroup, Errors) {
  try {
    mult_group({Real(0), Real(q("1/2"))});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroInSet);
  }
  EXPECT_THROW(mult_group({Real(q("3/2"))}), Error);
}

}  // namespace
}  // namespace krieger
