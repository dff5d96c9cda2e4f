#include <benchmark/benchmark.h>

#include <cmath>

#include "cfma/cfma_rates.hpp"
#include "cfma/channel_stats.hpp"

namespace {

const cfma::ChannelModel kModel(cfma::GainDistribution::gaussian(2.0, 0.25),
                                cfma::GainDistribution::gaussian(2.0, 0.25));

double log_sum(double x, double y) { return std::log2(1.0 + x * x + y * y); }

void BM_ExpectQuadrature(benchmark::State& state) {
  const cfma::ExpectationMethod method = cfma::GaussHermite{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(cfma::expect(kModel, log_sum, method).value);
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_ExpectQuadrature)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

void BM_ExpectMonteCarlo(benchmark::State& state) {
  const cfma::ExpectationMethod method = cfma::MonteCarlo{7, state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(cfma::expect(kModel, log_sum, method).value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExpectMonteCarlo)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_RatePair(benchmark::State& state) {
  const cfma::CoefficientPair coeffs({1, 1}, {0, 1});
  const auto scaling = cfma::Scaling::from_gamma(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfma::achievable_rate_pair(kModel, coeffs, scaling, cfma::GaussHermite{64}).R1);
  }
}
BENCHMARK(BM_RatePair);

}  // namespace
