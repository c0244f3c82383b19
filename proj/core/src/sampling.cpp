#include "krieger/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <thread>

#include "krieger/error.hpp"

namespace krieger {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Index into c.symbols drawn proportionally to the kept weights.
std::size_t draw(const BlockCoordinate& c, std::mt19937_64& rng) {
  double u = uniform(rng) * c.retained_mass.value();
  for (std::size_t i = 0; i + 1 < c.weights.size(); ++i) {
    u -= c.weights[i].value();
    if (u < 0) return i;
  }
  return c.weights.size() - 1;
}

Word draw_word(const Block& block, std::mt19937_64& rng) {
  Word w(block.length);
  for (std::size_t k = 0; k < block.length; ++k) w[k] = block.coordinates[k].symbols[draw(block.coordinates[k], rng)];
  return w;
}

CocycleSample sample_one(const Block& block, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CocycleSample s;
  Rational num = 1;
  Rational den = 1;
  for (std::size_t k = 0; k < block.length; ++k) {
    const auto& c = block.coordinates[k];
    const std::size_t a = draw(c, rng);
    const std::size_t b = draw(c, rng);
    if (a == b) continue;
    s.log += c.log_weights[b] - c.log_weights[a];
    if (block.exact) {
      num *= c.weights[b].exact();
      den *= c.weights[a].exact();
    }
  }
  if (block.exact) s.ratio = num / den;
  return s;
}

}  // namespace

std::vector<double> CocycleSampleSet::logs() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.log);
  return out;
}

CocycleSampleSet mc_sample_cocycle(const ValidatedScheme& scheme, const SampleParams& params) {
  if (params.samples == 0) throw Error(Errc::DomainError, "need at least one sample");
  const Block block = make_block(scheme, params.start, params.window, params.delta);
  CocycleSampleSet set;
  set.seed = params.seed;
  set.start = params.start;
  set.window = params.window;
  set.delta = params.delta;
  set.moves = "x, y independent from the product measure on coordinates " + std::to_string(params.start + 1) +
              ".." + std::to_string(params.start + static_cast<std::int64_t>(params.window)) +
              " (kept symbols only); sample i seeded by splitmix64(seed + i)";
  set.samples.resize(params.samples);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) set.samples[i] = sample_one(block, splitmix64(params.seed + i));
  };
  const std::size_t threads = std::clamp<std::size_t>(params.threads, 1, params.samples);
  if (threads == 1) {
    work(0, params.samples);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (params.samples + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(params.samples, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return set;
}

void write_samples(std::ostream& out, const CocycleSampleSet& set) {
  char buf[64];
  for (std::size_t i = 0; i < set.samples.size(); ++i) {
    const auto& s = set.samples[i];
    std::snprintf(buf, sizeof buf, "%.17g", s.log);
    out << i << ',' << buf;
    if (s.ratio) out << ',' << s.ratio->get_num().get_str() << ',' << s.ratio->get_den().get_str();
    out << '\n';
  }
}

std::string_view to_string(LatticeResult::Kind kind) {
  switch (kind) {
    case LatticeResult::Kind::AllZero: return "all-zero";
    case LatticeResult::Kind::Lattice: return "lattice";
    case LatticeResult::Kind::NoLattice: return "no-lattice";
  }
  return "no-lattice";
}

LatticeResult lattice_detect(const std::vector<double>& samples, double tol, std::int64_t max_multiple) {
  LatticeResult r;
  std::vector<double> nonzero;
  for (double v : samples) {
    if (std::abs(v) > tol) nonzero.push_back(std::abs(v));
  }
  r.nonzero = nonzero.size();
  if (nonzero.empty()) return r;
  if (nonzero.size() < 2) throw Error(Errc::InsufficientSamples, "need at least two nonzero samples");

  constexpr int kMaxSteps = 10'000;
  double g = nonzero.front();
  for (std::size_t i = 1; i < nonzero.size(); ++i) {
    double a = std::max(g, nonzero[i]);
    double b = std::min(g, nonzero[i]);
    while (b > tol && r.euclid_steps < kMaxSteps) {
      const double rem = std::fmod(a, b);
      a = b;
      b = rem;
      ++r.euclid_steps;
    }
    g = a;
  }

  r.kind = LatticeResult::Kind::NoLattice;
  double num = 0;
  double den = 0;
  for (double v : samples) {
    const double k = std::round(v / g);
    if (std::abs(k) > static_cast<double>(max_multiple)) return r;
    num += k * v;
    den += k * k;
  }
  const double c = num / den;
  for (double v : samples) r.max_residual = std::max(r.max_residual, std::abs(v - std::round(v / g) * c));
  if (r.max_residual <= tol && c > tol) {
    r.kind = LatticeResult::Kind::Lattice;
    r.period = c;
  }
  return r;
}

std::string_view to_string(EmpiricalLabel label) {
  switch (label) {
    case EmpiricalLabel::IILike: return "II-like";
    case EmpiricalLabel::III0Like: return "III_0-like";
    case EmpiricalLabel::IIILambdaLike: return "III_lambda-like";
    case EmpiricalLabel::III1Like: return "III_1-like";
  }
  return "II-like";
}

RatioSetEstimate estimate_ratio_set(const ValidatedScheme& scheme, const EstimateParams& params) {
  RatioSetEstimate est;
  SampleParams sp;
  sp.seed = params.seed;
  sp.samples = params.samples;
  sp.window = params.window;
  sp.start = params.start;
  sp.delta = params.delta;
  sp.threads = params.threads;
  const CocycleSampleSet set = mc_sample_cocycle(scheme, sp);

  bool lattice_known = true;
  try {
    est.lattice = lattice_detect(set.logs(), params.tol);
  } catch (const Error&) {
    lattice_known = false;
    est.lattice.nonzero = 1;
    est.lattice.kind = LatticeResult::Kind::NoLattice;
  }
  if (lattice_known && est.lattice.kind == LatticeResult::Kind::AllZero) {
    est.label = EmpiricalLabel::IILike;
    est.evidence = "all " + std::to_string(set.samples.size()) + " sampled log-cocycle values vanish";
    return est;
  }
  if (lattice_known && est.lattice.kind == LatticeResult::Kind::Lattice) {
    est.label = EmpiricalLabel::IIILambdaLike;
    est.lambda = std::exp(-est.lattice.period);
    est.evidence = "sampled log-cocycle values lie on a lattice of period " + std::to_string(est.lattice.period);
    return est;
  }

  const Block block = make_block(scheme, params.start, params.window, params.delta);
  std::mt19937_64 rng(splitmix64(params.seed ^ 0x70726F6265ULL));
  std::size_t skipped = 0;
  for (std::size_t d = 0; d < params.probe_draws; ++d) {
    const Word x = draw_word(block, rng);
    for (double c : params.probe_logs) {
      WitnessQuery q;
      q.target = Real::approximate(std::exp(-c));
      q.eps = Real(params.probe_eps);
      q.start = params.start;
      q.max_block = params.window;
      q.delta = params.delta;
      q.anchor = x;
      try {
        if (witness_search(scheme, q).witness) ++est.probe_hits;
        ++est.probe_trials;
      } catch (const Error&) {
        ++skipped;
      }
    }
  }
  const bool dense = est.probe_trials > 0 &&
                     static_cast<double>(est.probe_hits) >= params.hit_fraction * static_cast<double>(est.probe_trials);
  est.label = dense ? EmpiricalLabel::III1Like : EmpiricalLabel::III0Like;
  est.evidence = "no lattice; anchored witness probes hit " + std::to_string(est.probe_hits) + " of " +
                 std::to_string(est.probe_trials);
  if (skipped > 0) est.evidence += " (" + std::to_string(skipped) + " probes over budget)";
  return est;
}

bool labels_agree(const TypeVerdict& analytic, const RatioSetEstimate& empirical, double lambda_tol) {
  switch (analytic.label) {
    case TypeLabel::I:
    case TypeLabel::II1:
    case TypeLabel::IIinf: return empirical.label == EmpiricalLabel::IILike;
    case TypeLabel::III0: return empirical.label == EmpiricalLabel::III0Like;
    case TypeLabel::III1: return empirical.label == EmpiricalLabel::III1Like;
    case TypeLabel::IIIlambda:
      if (empirical.label != EmpiricalLabel::IIILambdaLike || !analytic.lambda || !empirical.lambda) return false;
      return std::abs(std::log(*empirical.lambda) / analytic.lambda->log() - 1) < lambda_tol;
    case TypeLabel::Inconclusive: return false;
  }
  return false;
}

}  // namespace krieger
