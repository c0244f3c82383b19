#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "krieger/classifier.hpp"
#include "krieger/cocycle.hpp"

namespace krieger {

/// The bytes of "B3RN0U11".
inline constexpr std::uint64_t kDefaultSeed = 0x4233524E30553131ULL;

struct SampleParams {
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 10'000;
  std::size_t window = 20;
  std::int64_t start = 0;
  Rational delta = kDefaultTruncation;
  unsigned threads = 1;
};

struct CocycleSample {
  double log = 0;
  std::optional<Rational> ratio;  // exact D when the block is exact
};

struct CocycleSampleSet {
  std::uint64_t seed = kDefaultSeed;
  std::int64_t start = 0;
  std::size_t window = 0;
  Rational delta;
  std::vector<CocycleSample> samples;
  std::string moves;

  std::vector<double> logs() const;
};

/// Draws x and an independent y on coordinates start+1 .. start+window from
/// the (truncated) product measure and records log D(x -> y). Sample i uses
/// its own generator seeded from (seed, i), so output does not depend on the
/// thread count.
CocycleSampleSet mc_sample_cocycle(const ValidatedScheme& scheme, const SampleParams& params);

/// One line per sample: "index,log_D,D_num,D_den" with log_D printed to 17
/// significant digits. Inexact sets omit the last two fields.
void write_samples(std::ostream& out, const CocycleSampleSet& set);

struct LatticeResult {
  enum class Kind { AllZero, Lattice, NoLattice };

  Kind kind = Kind::AllZero;
  double period = 0;  // Lattice only
  std::size_t nonzero = 0;
  double max_residual = 0;
  int euclid_steps = 0;
};

std::string_view to_string(LatticeResult::Kind kind);

inline constexpr double kDefaultLatticeTolerance = 1e-6;

/// Real gcd of the samples by iterated remainder down to `tol`, refined by
/// least squares. Lattice(c) when every sample lies within tol of c*Z with
/// at most max_multiple periods. Error InsufficientSamples when exactly one
/// sample is nonzero.
LatticeResult lattice_detect(const std::vector<double>& samples, double tol = kDefaultLatticeTolerance,
                             std::int64_t max_multiple = 10'000);

enum class EmpiricalLabel { IILike, III0Like, IIILambdaLike, III1Like };

std::string_view to_string(EmpiricalLabel label);

struct EstimateParams {
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 10'000;
  std::size_t window = 20;
  std::int64_t start = 64;
  Rational delta = kDefaultTruncation;
  double tol = kDefaultLatticeTolerance;
  unsigned threads = 1;
  // Witness probes run when the samples show no lattice.
  std::vector<double> probe_logs{0.5, 1.0, 1.5};  // targets exp(-c)
  Rational probe_eps{1, 20};
  std::size_t probe_draws = 16;
  double hit_fraction = 0.5;
};

struct RatioSetEstimate {
  EmpiricalLabel label = EmpiricalLabel::IILike;
  std::optional<double> lambda;
  LatticeResult lattice;
  std::size_t probe_hits = 0;
  std::size_t probe_trials = 0;
  std::string evidence;
};

/// Samples the cocycle, looks for a lattice, and when there is none probes
/// for witnesses of exp(-c) anchored at random x: most probes hit for
/// III_1-like, few for III_0-like.
RatioSetEstimate estimate_ratio_set(const ValidatedScheme& scheme, const EstimateParams& params);

/// I and II types match II-like; III_lambda additionally needs
/// |log lambda_emp / log lambda - 1| < lambda_tol.
bool labels_agree(const TypeVerdict& analytic, const RatioSetEstimate& empirical, double lambda_tol = 1e-3);

}  // namespace krieger
