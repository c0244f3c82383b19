#include <benchmark/benchmark.h>

#include "krieger/classifier.hpp"
#include "krieger/cocycle.hpp"
#include "krieger/sampling.hpp"

namespace {

using namespace krieger;

SchemeSpec powers(const Rational& lambda) {
  const Rational a = 1 / (1 + lambda);
  SchemeSpec s;
  s.classes.push_back(IndexClass{Progression{1, 1}, WeightTemplate{ExplicitWeights{{a, 1 - a}}, {}}});
  return s;
}

SchemeSpec interleave(const Rational& r, const Rational& t) {
  SchemeSpec s;
  for (const auto& [start, lambda] : {std::pair{1L, r}, std::pair{2L, t}}) {
    const Rational a = 1 / (1 + lambda);
    s.classes.push_back(IndexClass{Progression{start, 2}, WeightTemplate{ExplicitWeights{{a, 1 - a}}, {}}});
  }
  return s;
}

void BM_Classify(benchmark::State& state) {
  const auto spec = interleave(Rational(1, 2), Rational(1, 3));
  for (auto _ : state) benchmark::DoNotOptimize(classify(spec));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMicrosecond);

void BM_WitnessSearch(benchmark::State& state) {
  const auto scheme = prepare(interleave(Rational(1, 2), Rational(1, 3)));
  WitnessQuery q;
  q.target = Rational(7071, 10000);
  q.eps = Rational(1, 1'000'000'000);
  q.max_block = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(witness_search(scheme, q));
}
BENCHMARK(BM_WitnessSearch)->Arg(12)->Arg(20)->Arg(28)->Unit(benchmark::kMillisecond);

void BM_Sample(benchmark::State& state) {
  const auto scheme = prepare(powers(Rational(1, 2)));
  SampleParams p;
  p.samples = 10'000;
  p.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_sample_cocycle(scheme, p));
}
BENCHMARK(BM_Sample)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
