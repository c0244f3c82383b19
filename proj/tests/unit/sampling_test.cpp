#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "krieger/error.hpp"
#include "krieger/sampling.hpp"
#include "oracles.hpp"

namespace krieger {
namespace {

using fixtures::q;

SampleParams small(std::uint64_t seed = 7) {
  SampleParams p;
  p.seed = seed;
  p.samples = 2000;
  p.window = 16;
  return p;
}

TEST(Sampling, DefaultSeedSpellsName) {
  std::string bytes;
  for (int i = 7; i >= 0; --i) bytes += static_cast<char>((kDefaultSeed >> (8 * i)) & 0xff);
  EXPECT_EQ(bytes, "B3RN0U11");
}

TEST(Sampling, PowersHalfExactPowersOfTwo) {
  auto set = mc_sample_cocycle(validate(fixtures::powers(q("1/2"))), small());
  ASSERT_EQ(set.samples.size(), 2000u);
  std::size_t nonzero = 0;
  for (const auto& s : set.samples) {
    ASSERT_TRUE(s.ratio.has_value());
    auto e = oracles::prime_exponents(*s.ratio);
    ASSERT_LE(e.size(), 1u);
    if (!e.empty()) {
      EXPECT_EQ(e.begin()->first, 2u);
      EXPECT_NEAR(s.log, e.begin()->second * std::log(2.0), 1e-12);
      ++nonzero;
    }
  }
  EXPECT_GT(nonzero, 1000u);
}

TEST(Sampling, UniformIsZero) {
  auto set = mc_sample_cocycle(validate(fixtures::uniform()), small());
  for (const auto& s : set.samples) {
    EXPECT_EQ(s.log, 0.0);
    EXPECT_EQ(*s.ratio, Rational(1));
  }
  EXPECT_EQ(lattice_detect(set.logs()).kind, LatticeResult::Kind::AllZero);
}

TEST(Sampling, InterleaveHasIndependentDirections) {
  SampleParams p;
  p.samples = 10'000;
  p.window = 20;
  auto set = mc_sample_cocycle(validate(fixtures::interleave(q("1/2"), q("1/3"))), p);
  std::vector<std::pair<long, long>> vecs;
  for (const auto& s : set.samples) {
    auto e = oracles::prime_exponents(*s.ratio);
    for (const auto& [prime, exp] : e) ASSERT_TRUE(prime == 2 || prime == 3) << *s.ratio;
    // D = 2^m 3^n
    const long m = e.contains(2) ? e.at(2) : 0;
    const long n = e.contains(3) ? e.at(3) : 0;
    EXPECT_NEAR(s.log, m * std::log(2.0) + n * std::log(3.0), 1e-12);
    vecs.emplace_back(m, n);
  }
  bool independent = false;
  for (const auto& v : vecs) {
    if (v.first * vecs.front().second != v.second * vecs.front().first) independent = true;
  }
  EXPECT_TRUE(independent);
  EXPECT_EQ(lattice_detect(set.logs()).kind, LatticeResult::Kind::NoLattice);
}

TEST(Sampling, DeterministicAcrossRunsAndThreads) {
  auto v = validate(fixtures::interleave(q("1/2"), q("1/3")));
  auto a = mc_sample_cocycle(v, small(99));
  auto b = mc_sample_cocycle(v, small(99));
  auto p = small(99);
  p.threads = 4;
  auto c = mc_sample_cocycle(v, p);
  std::ostringstream sa, sb, sc;
  write_samples(sa, a);
  write_samples(sb, b);
  write_samples(sc, c);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(sa.str(), sc.str());
  auto d = mc_sample_cocycle(v, small(100));
  std::ostringstream sd;
  write_samples(sd, d);
  EXPECT_NE(sa.str(), sd.str());
}

TEST(Sampling, FloatModeAndStart) {
  auto z = validate(fixtures::zero_one());
  auto p = small();
  p.start = 64;
  auto set = mc_sample_cocycle(z, p);
  EXPECT_EQ(set.start, 64);
  for (const auto& s : set.samples) EXPECT_FALSE(s.ratio.has_value());
  std::ostringstream out;
  write_samples(out, set);
  std::string first = out.str().substr(0, out.str().find('\n'));
  EXPECT_EQ(std::count(first.begin(), first.end(), ','), 1);
}

TEST(Sampling, ExportFormat) {
  auto set = mc_sample_cocycle(validate(fixtures::powers(q("1/2"))), small());
  std::ostringstream out;
  write_samples(out, set);
  std::istringstream in(out.str());
  std::string line;
  std::size_t i = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string idx, log, num, den;
    std::getline(fields, idx, ',');
    std::getline(fields, log, ',');
    std::getline(fields, num, ',');
    std::getline(fields, den, ',');
    ASSERT_EQ(std::stoul(idx), i);
    EXPECT_EQ(std::stod(log), set.samples[i].log);
    EXPECT_EQ(Rational(Integer(num), Integer(den)), *set.samples[i].ratio);
    ++i;
  }
  EXPECT_EQ(i, set.samples.size());
}

TEST(Lattice, Examples) {
  const double l2 = std::log(2.0);
  auto r = lattice_detect({0, l2, -3 * l2});
  ASSERT_EQ(r.kind, LatticeResult::Kind::Lattice);
  EXPECT_NEAR(r.period, l2, 1e-12);
  EXPECT_EQ(lattice_detect({0}).kind, LatticeResult::Kind::AllZero);
  EXPECT_EQ(lattice_detect({}).kind, LatticeResult::Kind::AllZero);
  auto none = lattice_detect({l2, std::log(3.0)});
  EXPECT_EQ(none.kind, LatticeResult::Kind::NoLattice);
  EXPECT_LE(none.euclid_steps, 40);
}

TEST(Lattice, CommensurableLogs) {
  // log 4 and log 8 share the period log 2
  auto r = lattice_detect({std::log(4.0), std::log(8.0), -std::log(4.0)});
  ASSERT_EQ(r.kind, LatticeResult::Kind::Lattice);
  EXPECT_NEAR(r.period, std::log(2.0), 1e-9);
  EXPECT_EQ(r.nonzero, 3u);
}

TEST(Lattice, SingleNonzeroSample) {
  try {
    lattice_detect({0, 0, 1.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InsufficientSamples);
  }
}

TEST(Lattice, MultipleBound) {
  // a period that needs more than max_multiple steps is rejected
  auto r = lattice_detect({1.0, 1.0 + 1e-3}, 1e-6, 100);
  EXPECT_EQ(r.kind, LatticeResult::Kind::NoLattice);
}

TEST(Estimate, Labels) {
  EstimateParams p;
  p.samples = 4000;
  auto powers = estimate_ratio_set(validate(fixtures::powers(q("1/2"))), p);
  EXPECT_EQ(powers.label, EmpiricalLabel::IIILambdaLike);
  ASSERT_TRUE(powers.lambda.has_value());
  EXPECT_NEAR(*powers.lambda, 0.5, 1e-9);

  auto inter = estimate_ratio_set(validate(fixtures::interleave(q("1/2"), q("1/3"))), p);
  EXPECT_EQ(inter.label, EmpiricalLabel::III1Like);
  EXPECT_GT(inter.probe_trials, 0u);

  EXPECT_EQ(estimate_ratio_set(validate(fixtures::uniform()), p).label, EmpiricalLabel::IILike);

  auto zo = estimate_ratio_set(validate(fixtures::zero_one()), p);
  EXPECT_EQ(zo.label, EmpiricalLabel::III0Like);
}

TEST(Estimate, Agreement) {
  RatioSetEstimate e;
  e.label = EmpiricalLabel::IIILambdaLike;
  e.lambda = 0.5;
  TypeVerdict v;
  v.label = TypeLabel::IIIlambda;
  v.lambda = Real(q("1/2"));
  EXPECT_TRUE(labels_agree(v, e));
  e.lambda = std::exp(std::log(0.5) * 1.01);
  EXPECT_FALSE(labels_agree(v, e));
  e.lambda = 0.5;
  v.label = TypeLabel::III1;
  EXPECT_FALSE(labels_agree(v, e));
  e.label = EmpiricalLabel::IILike;
  for (auto l : {TypeLabel::I, TypeLabel::II1, TypeLabel::IIinf}) {
    v.label = l;
    EXPECT_TRUE(labels_agree(v, e));
  }
  v.label = TypeLabel::Inconclusive;
  EXPECT_FALSE(labels_agree(v, e));
}

}  // namespace
}  // namespace krieger
