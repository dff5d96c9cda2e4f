#include <benchmark/benchmark.h>

#include "cfma/capacity_conditions.hpp"
#include "cfma/explorer.hpp"
#include "cfma/parallel.hpp"

namespace {

const cfma::ChannelModel kModel(cfma::GainDistribution::gaussian(2.0, 0.25),
                                cfma::GainDistribution::gaussian(2.0, 0.25));

void BM_ConditionIff(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cfma::condition_iff(kModel, 1.0, cfma::GaussHermite{64}).value.value);
}
BENCHMARK(BM_ConditionIff);

void BM_GammaRangeScan(benchmark::State& state) {
  cfma::set_max_workers(1);
  const cfma::ExpectationMethod method = cfma::GaussHermite{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfma::gamma_range_scan(kModel, {1, 1}, cfma::default_gamma_scan(), method).intervals);
  }
}
BENCHMARK(BM_GammaRangeScan)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ClassifyPoint(benchmark::State& state) {
  cfma::set_max_workers(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfma::classify_point(kModel, cfma::default_gamma_scan(), cfma::GaussHermite{32}).label);
  }
}
BENCHMARK(BM_ClassifyPoint)->Unit(benchmark::kMillisecond);

}  // namespace
