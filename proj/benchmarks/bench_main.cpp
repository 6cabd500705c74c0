#include <benchmark/benchmark.h>

#include "dtlab/brown_hs.hpp"
#include "dtlab/cumulant_engine.hpp"
#include "dtlab/experiments.hpp"
#include "dtlab/pairing_oracle.hpp"

using namespace dtlab;

namespace {

// Alternating word of length 2 * half, the one with the most pairings.
EpsWord alternating(std::int64_t half) {
  std::string w;
  for (std::int64_t i = 0; i < half; ++i) w += "*1";
  return EpsWord::parse(w);
}

void BM_MomentEngineFresh(benchmark::State& state) {
  const CoeffWord cw = CoeffWord::units(alternating(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scalar_moment(cw));
}
BENCHMARK(BM_MomentEngineFresh)->DenseRange(1, 6);

void BM_MomentEngineAllWords(benchmark::State& state) {
  const auto words = balanced_words(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    MomentEngine engine;
    for (const auto& w : words) benchmark::DoNotOptimize(engine.scalar_moment(CoeffWord::units(w)));
  }
  state.counters["words"] = static_cast<double>(words.size());
}
BENCHMARK(BM_MomentEngineAllWords)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

void BM_PairingOracle(benchmark::State& state) {
  const EpsWord w = alternating(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pairing_oracle(w));
}
BENCHMARK(BM_PairingOracle)->DenseRange(1, 6);

void BM_SampleUT(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_ut(state.range(0), seed++));
}
BENCHMARK(BM_SampleUT)->RangeMultiplier(2)->Range(64, 512);

void BM_SampleGUE(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_gue(state.range(0), seed++));
}
BENCHMARK(BM_SampleGUE)->RangeMultiplier(2)->Range(64, 512);

void BM_Schur(benchmark::State& state) {
  const auto [z, eig] = random_separated_matrix(state.range(0), 0.5, 1);
  for (auto _ : state) benchmark::DoNotOptimize(schur(z));
}
BENCHMARK(BM_Schur)->RangeMultiplier(2)->Range(16, 256);

void BM_ReorderSchur(benchmark::State& state) {
  const auto [z, eig] = random_separated_matrix(state.range(0), 0.5, 1);
  const SchurForm form = schur(z);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reorder_schur(form, [](Complex l) { return std::abs(l) > 1.2; }));
  }
}
BENCHMARK(BM_ReorderSchur)->RangeMultiplier(2)->Range(16, 256);

void BM_HSProjectionDT(benchmark::State& state) {
  const MatrixModel m = build_dt(RadialMeasure({{1.0, 0.5}, {2.0, 0.5}}), 1.0, state.range(0), 3);
  for (auto _ : state) benchmark::DoNotOptimize(hs_projection(m.Z, Region::disc(1.5)));
}
BENCHMARK(BM_HSProjectionDT)->RangeMultiplier(2)->Range(32, 256);

}  // namespace

BENCHMARK_MAIN();
