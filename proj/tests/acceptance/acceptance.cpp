// Prints one PASS/FAIL line per acceptance criterion; exits 1 on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli.hpp"
#include "fixtures.hpp"
#include "krieger/classifier.hpp"
#include "krieger/cocycle.hpp"
#include "krieger/group.hpp"
#include "krieger/sampling.hpp"
#include "krieger/spec_io.hpp"
#include "oracles.hpp"
#include "transforms.hpp"

namespace {

using namespace krieger;
using fixtures::q;
using Clock = std::chrono::steady_clock;

// Pinned limits and tolerances.
constexpr double kCanonicalSeconds = 1.0;
constexpr std::uint64_t kOracleWordLimit = 100'000;
constexpr std::uint64_t kBruteForcePairLimit = 10'000'000;
constexpr std::size_t kOracleMaxBlock = 24;
constexpr double kOracleSeconds = 60.0;
constexpr double kInexactDistanceTol = 1e-12;
constexpr int kExponentRange = 20;
constexpr int kInvarianceTrials = 200;
constexpr std::size_t kMaxPrefix = 8;
constexpr std::size_t kLatticeSamples = 10'000;
constexpr double kPeriodTol = 1e-9;
constexpr int kComposedPairs = 1000;
constexpr std::size_t kReportSamples = 10'000;
constexpr std::size_t kReportWindow = 20;
constexpr double kReportSeconds = 120.0;
constexpr std::uint64_t kSeed = 20261016;

const char* const kCanonical[] = {"powers_half.yaml", "uniform.yaml", "type_i.yaml", "interleave_2_3.yaml",
                                  "zero_one.yaml"};

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string cli_output(std::vector<std::string> args, int* code = nullptr) {
  args.insert(args.begin(), "krieger");
  std::ostringstream out, err;
  const int c = cli::run(args, out, err);
  if (code) *code = c;
  return out.str();
}

Rational power(const Rational& base, int k) {
  Rational r = 1;
  for (int i = 0; i < std::abs(k); ++i) r *= base;
  if (k < 0) r = 1 / r;
  r.canonicalize();
  return r;
}

bool same_distance(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return std::abs(a.value() - b.value()) <= kInexactDistanceTol;
}

Outcome canonical_classifications() {
  Outcome o;
  int matched = 0;
  for (const char* name : kCanonical) {
    const auto t0 = Clock::now();
    const auto v = classify(load_scheme(fixtures::spec_file(name)));
    const double dt = seconds_since(t0);
    const auto& ev = v.certificate.evidence;
    const std::string file = name;
    bool ok = false;
    if (file == "powers_half.yaml") {
      ok = v.label == TypeLabel::IIIlambda && v.lambda && *v.lambda == Real(q("1/2"));
    } else if (file == "uniform.yaml") {
      ok = v.label == TypeLabel::II1 && ev.type_ii1.sum && ev.type_ii1.sum->is_exact() &&
           ev.type_ii1.sum->exact() == 0;
    } else if (file == "type_i.yaml") {
      ok = v.label == TypeLabel::I && ev.mode == ArithmeticMode::Exact && ev.type_i.sum &&
           ev.type_i.sum->is_exact() && ev.type_i.sum->exact() == q("1/2");
    } else if (file == "interleave_2_3.yaml") {
      ok = v.label == TypeLabel::III1;
    } else {
      ok = v.label == TypeLabel::III0;
    }
    if (!ok) o.fail(file + " classified " + std::string(to_string(v.label)));
    if (dt >= kCanonicalSeconds) o.fail(file + " took " + std::to_string(dt) + " s");
    matched += ok;
  }
  o.detail = std::to_string(matched) + "/5 match" + (o.pass ? "" : ": " + o.detail);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = Clock::now();
  transforms::Rng rng(kSeed);
  const Rational delta = q("1/64");
  const std::vector<Rational> epsilons{q("1/100"), q("1/10000")};
  std::size_t specs = 0, blocks = 0, brute_blocks = 0, queries = 0;
  for (const auto& [name, spec] : fixtures::corpus()) {
    ++specs;
    const auto scheme = prepare(spec);
    const auto verdict = classify(scheme);
    const Rational lambda =
        verdict.lambda && verdict.lambda->is_exact() ? verdict.lambda->exact() : Rational(q("1/2"));
    std::vector<Real> targets;
    for (int k = -2; k <= 3; ++k) targets.emplace_back(power(lambda, k));
    for (int i = 0; i < 10; ++i) {
      Rational r(static_cast<long>(1 + transforms::uniform_index(rng, 40)),
                 static_cast<long>(1 + transforms::uniform_index(rng, 40)));
      r.canonicalize();
      targets.emplace_back(r);
    }
    for (std::int64_t start : {0, 3}) {
      std::vector<std::vector<Real>> oracle(1);  // min distance per target, indexed by K
      for (std::size_t K = 1; K <= kOracleMaxBlock; ++K) {
        const auto block = make_block(scheme, start, K, delta);
        if (oracles::word_count(block) > kOracleWordLimit) break;
        oracle.push_back(oracles::min_ratio_distance(block, targets));
        ++blocks;
        if (block.pair_count() > kBruteForcePairLimit) continue;
        ++brute_blocks;
        const auto hits = brute_force_block(block, targets, kBruteForcePairLimit);
        for (std::size_t t = 0; t < targets.size(); ++t) {
          if (!same_distance(hits[t].distance, oracle.back()[t])) {
            o.fail(name + " K=" + std::to_string(K) + " target=" + targets[t].str() + ": brute force " +
                   hits[t].distance.str() + " vs sorted-weight oracle " + oracle.back()[t].str());
          }
        }
      }
      const std::size_t max_block = oracle.size() - 1;
      for (std::size_t t = 0; t < targets.size(); ++t) {
        for (const auto& eps : epsilons) {
          ++queries;
          WitnessQuery query;
          query.target = targets[t];
          query.eps = eps;
          query.start = start;
          query.max_block = max_block;
          query.delta = delta;
          const auto found = witness_search(scheme, query);
          const std::size_t first = found.witness ? found.witness->length : max_block + 1;
          const std::string where = name + " start=" + std::to_string(start) + " target=" + targets[t].str() +
                                    " eps=" + Real(eps).str();
          for (std::size_t K = 1; K <= max_block; ++K) {
            const bool exists = oracle[K][t] < Real(eps);
            if (exists != (K >= first)) o.fail(where + ": existence differs at K=" + std::to_string(K));
          }
          if (found.witness && !same_distance(found.witness->distance(), oracle[first][t])) {
            o.fail(where + ": distance " + found.witness->distance().str() + " vs oracle " +
                   oracle[first][t].str());
          }
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  if (specs < 20) o.fail("corpus has " + std::to_string(specs) + " specs");
  if (dt >= kOracleSeconds) o.fail("took " + std::to_string(dt) + " s");
  std::ostringstream s;
  s << specs << " specs, " << blocks << " blocks (" << brute_blocks << " also brute-forced), " << queries
    << " queries, " << dt << " s";
  o.detail = s.str() + (o.pass ? "" : ": " + o.detail);
  return o;
}

Outcome group_structure() {
  Outcome o;
  std::size_t cases = 0;
  for (const char* l : {"1/2", "1/3", "2/3", "3/5"}) {
    const Rational lambda = q(l);
    for (int a = 1; a <= kExponentRange; ++a) {
      for (int b = 1; b <= kExponentRange; ++b) {
        ++cases;
        const auto g = mult_group({Real(power(lambda, a)), Real(power(lambda, b))});
        const Real expected(power(lambda, std::gcd(a, b)));
        if (g.kind != GroupStructure::Kind::Cyclic || !(g.generator == expected)) {
          o.fail(std::string(l) + "^" + std::to_string(a) + ", ^" + std::to_string(b) + " gave " +
                 std::string(to_string(g.kind)) + " " + g.generator.str());
        }
      }
    }
  }
  const std::pair<const char*, const char*> incommensurable[] = {
      {"1/2", "1/3"},     {"1/2", "1/5"},       {"1/3", "1/5"},     {"2/3", "1/2"},    {"2/3", "1/3"},
      {"3/5", "1/2"},     {"3/5", "2/3"},       {"1/6", "1/2"},     {"1/6", "1/3"},    {"1/10", "1/2"},
      {"3/4", "2/3"},     {"4/9", "1/2"},       {"1/12", "1/18"},   {"5/7", "2/7"},    {"1/7", "1/11"},
      {"8/9", "1/3"},     {"9/10", "1/10"},     {"2/5", "4/5"},     {"1/4", "1/9"},    {"1/8", "1/27"},
      {"6/35", "35/36"},  {"1/1000", "1/1024"}, {"99/100", "98/99"}, {"1/30", "1/42"}, {"7/8", "1/2"},
  };
  for (const auto& [a, b] : incommensurable) {
    ++cases;
    if (oracles::commensurability(q(a), q(b))) o.fail(std::string(a) + ", " + b + " is commensurable");
    const auto g = mult_group({Real(q(a)), Real(q(b))});
    if (g.kind != GroupStructure::Kind::Dense) o.fail(std::string(a) + ", " + b + " not dense");
  }
  o.detail = std::to_string(cases) + " cases" + (o.pass ? "" : ": " + o.detail);
  return o;
}

Outcome invariance() {
  Outcome o;
  transforms::Rng rng(kSeed + 4);
  const auto corpus = fixtures::corpus();
  std::size_t changes = 0;
  const std::function<std::vector<SchemeSpec>(const SchemeSpec&)> kinds[] = {
      [&](const SchemeSpec& s) { return std::vector<SchemeSpec>{transforms::permute_classes(s, rng)}; },
      [&](const SchemeSpec& s) {
        return std::vector<SchemeSpec>{transforms::replace_prefix(s, 1 + transforms::uniform_index(rng, kMaxPrefix), rng)};
      },
      [&](const SchemeSpec& s) {
        auto shuffled = transforms::shuffle_symbols(s, rng);
        return std::vector<SchemeSpec>{shuffled, normalize(shuffled).spec};
      },
  };
  const char* names[] = {"permutation", "prefix", "normalization"};
  for (std::size_t kind = 0; kind < 3; ++kind) {
    for (int trial = 0; trial < kInvarianceTrials; ++trial) {
      const auto& [name, spec] = corpus[transforms::uniform_index(rng, corpus.size())];
      const auto base = classify(spec);
      for (const auto& variant : kinds[kind](spec)) {
        const auto v = classify(variant);
        if (v.label != base.label || !(v.lambda == base.lambda)) {
          ++changes;
          o.fail(std::string(names[kind]) + " changed " + name + " to " + std::string(to_string(v.label)));
        }
      }
    }
  }
  o.detail = std::to_string(3 * kInvarianceTrials) + " trials, " + std::to_string(changes) + " label changes" +
             (o.pass ? "" : ": " + o.detail);
  return o;
}

Outcome cocycle_exactness() {
  Outcome o;
  SampleParams p;
  p.samples = kLatticeSamples;
  const auto set = mc_sample_cocycle(validate(fixtures::powers(q("1/2"))), p);
  std::size_t off = 0;
  for (const auto& s : set.samples) {
    if (!s.ratio) {
      ++off;
      continue;
    }
    const auto e = oracles::prime_exponents(*s.ratio);
    if (e.size() > 1 || (e.size() == 1 && e.begin()->first != 2)) ++off;
  }
  if (set.samples.size() != kLatticeSamples) o.fail("sample count " + std::to_string(set.samples.size()));
  if (off) o.fail(std::to_string(off) + " samples outside (log 2)Z");
  const auto lattice = lattice_detect(set.logs());
  const double err = std::abs(lattice.period - std::log(2.0));
  if (lattice.kind != LatticeResult::Kind::Lattice || err >= kPeriodTol) {
    o.fail("lattice " + std::string(to_string(lattice.kind)) + " period " + std::to_string(lattice.period));
  }
  std::ostringstream s;
  s << set.samples.size() << " samples, " << off << " off-lattice, |c - log 2| = " << err;
  o.detail = s.str() + (o.pass ? "" : ": " + o.detail);
  return o;
}

Outcome group_law() {
  Outcome o;
  transforms::Rng rng(kSeed + 6);
  const std::vector<SchemeSpec> pool{fixtures::powers(q("1/2")), fixtures::powers(q("1/3")),
                                     fixtures::interleave(q("1/2"), q("1/3")),
                                     fixtures::constant({q("1/2"), q("1/3"), q("1/6")}), fixtures::type_i_example()};
  std::vector<ValidatedScheme> schemes;
  for (const auto& s : pool) schemes.push_back(prepare(s));
  const Real epsilons[] = {Real(q("1/10")), Real(q("1/100"))};

  auto draw = [&](const ValidatedScheme& scheme, std::int64_t start) -> std::optional<Witness> {
    for (int attempt = 0; attempt < 20; ++attempt) {
      Rational r(static_cast<long>(1 + transforms::uniform_index(rng, 12)),
                 static_cast<long>(1 + transforms::uniform_index(rng, 12)));
      r.canonicalize();
      WitnessQuery query;
      query.target = r;
      query.eps = epsilons[transforms::uniform_index(rng, 2)];
      if (!(query.eps < query.target)) continue;
      query.start = start;
      query.max_block = 10;
      if (auto found = witness_search(scheme, query); found.witness) return found.witness;
    }
    return std::nullopt;
  };

  int composed = 0, violations = 0;
  while (composed < kComposedPairs) {
    const auto& scheme = schemes[transforms::uniform_index(rng, schemes.size())];
    const auto first = draw(scheme, static_cast<std::int64_t>(transforms::uniform_index(rng, 7)));
    if (!first) continue;
    const auto gap = static_cast<std::int64_t>(transforms::uniform_index(rng, 4));
    const auto second = draw(scheme, first->start + static_cast<std::int64_t>(first->length) + gap);
    if (!second) continue;
    ++composed;
    const auto c = compose_witnesses(*first, *second);
    const Real& r1 = first->target;
    const Real& r2 = second->target;
    const Real& e1 = first->tolerance;
    const Real& e2 = second->tolerance;
    const Real bound = e1 * r2.abs() + e2 * r1.abs() + e1 * e2;
    const Real error = (first->ratio * second->ratio - r1 * r2).abs();
    const bool ok = error.is_exact() && bound.is_exact() && error <= bound && c.ratio == first->ratio * second->ratio &&
                    c.target == r1 * r2 && c.tolerance == bound && replay(scheme, c);
    if (!ok) {
      ++violations;
      o.fail("violation: D=" + c.ratio.str() + " target=" + c.target.str() + " bound=" + bound.str());
    }
  }
  o.detail = std::to_string(composed) + " composed pairs, " + std::to_string(violations) + " violations" +
             (o.pass ? "" : ": " + o.detail);
  return o;
}

std::vector<std::string> report_args(const char* name) {
  return {"report", fixtures::spec_file(name).string(), "--format", "json", "--samples",
          std::to_string(kReportSamples), "--window", std::to_string(kReportWindow)};
}

Outcome analytic_vs_empirical(std::vector<std::string>& reports) {
  Outcome o;
  const auto t0 = Clock::now();
  int agreed = 0;
  for (const char* name : kCanonical) {
    int code = 0;
    reports.push_back(cli_output(report_args(name), &code));
    const auto j = nlohmann::json::parse(reports.back(), nullptr, false);
    const bool ok = code == cli::kDefinite && !j.is_discarded() && j["agreement"] == true;
    if (!ok) {
      o.fail(std::string(name) + ": exit " + std::to_string(code) +
             (j.is_discarded() ? "" : " analytic " + j["analytic"]["label"].dump() + " empirical " +
                                          j["empirical"]["label"].dump()));
    }
    agreed += ok;
  }
  const double dt = seconds_since(t0);
  if (dt >= kReportSeconds) o.fail("took " + std::to_string(dt) + " s");
  std::ostringstream s;
  s << agreed << "/5 agree, " << dt << " s";
  o.detail = s.str() + (o.pass ? "" : ": " + o.detail);
  return o;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::vector<std::string>& first_reports) {
  Outcome o;
  std::size_t compared = 0;
  for (std::size_t i = 0; i < std::size(kCanonical); ++i) {
    ++compared;
    if (i >= first_reports.size() || cli_output(report_args(kCanonical[i])) != first_reports[i]) {
      o.fail(std::string("report differs for ") + kCanonical[i]);
    }
  }
  std::vector<std::vector<std::string>> commands;
  for (const char* name : kCanonical) {
    const auto path = fixtures::spec_file(name).string();
    commands.push_back({"classify", path, "--format", "json"});
    commands.push_back({"witness", path, "--target", "1/2", "--eps", "1e-4", "--format", "json"});
    commands.push_back({"sample", path, "--samples", "2000", "--format", "json"});
  }
  commands.push_back({"oracle", fixtures::spec_file("powers_half.yaml").string(), "--targets", "1/3,1/2,2",
                      "--length", "6", "--format", "json"});
  for (const auto& args : commands) {
    ++compared;
    if (cli_output(args) != cli_output(args)) o.fail(args[0] + " differs for " + args[1]);
  }
  const auto dir = std::filesystem::temp_directory_path() / ("krieger_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  for (const char* name : kCanonical) {
    ++compared;
    const auto a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
    const auto path = fixtures::spec_file(name).string();
    cli_output({"sample", path, "--samples", "4000", "--seed", "99", "--export", a});
    cli_output({"sample", path, "--samples", "4000", "--seed", "99", "--threads", "4", "--export", b});
    const auto ta = read_file(a);
    if (ta.empty() || ta != read_file(b)) o.fail(std::string("sample export depends on threads for ") + name);
  }
  std::filesystem::remove_all(dir);
  o.detail = std::to_string(compared) + " outputs byte-identical" + (o.pass ? "" : ": " + o.detail);
  return o;
}

}  // namespace

int main() {
  std::vector<std::string> reports;
  const std::function<Outcome()> criteria[] = {
      canonical_classifications,
      oracle_equivalence,
      group_structure,
      invariance,
      cocycle_exactness,
      group_law,
      [&] { return analytic_vs_empirical(reports); },
      [&] { return determinism(reports); },
  };
  bool all = true;
  for (std::size_t i = 0; i < std::size(criteria); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
