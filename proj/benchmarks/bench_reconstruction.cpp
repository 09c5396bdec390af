#include <benchmark/benchmark.h>

#include "qtomo/qtomo.hpp"

using namespace qtomo;

namespace {

TomographyProtocol protocol_for(int which) { return which == 1 ? build_protocol1(1.0) : build_protocol2(1.0); }

CountData pulsed_counts(const TomographyProtocol& p, double n_events) {
  return sample_counts(p, scale_to_events(p, pulsed_state(40.0), n_events), 7);
}

}  // namespace

static void BM_BuildProtocol2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_protocol2(1.0));
}
BENCHMARK(BM_BuildProtocol2);

static void BM_Lsm(benchmark::State& state) {
  TomographyProtocol p = protocol_for(static_cast<int>(state.range(0)));
  CountData d = pulsed_counts(p, static_cast<double>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(lsm_reconstruct(p, d));
}
BENCHMARK(BM_Lsm)->Args({1, 10000})->Args({2, 10000})->Args({2, 1000});

static void BM_Mlm(benchmark::State& state) {
  TomographyProtocol p = protocol_for(static_cast<int>(state.range(0)));
  CountData d = pulsed_counts(p, static_cast<double>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(mlm_reconstruct(p, d));
}
BENCHMARK(BM_Mlm)->Args({1, 10000})->Args({2, 10000})->Args({2, 1000});

static void BM_InformationBundle(benchmark::State& state) {
  TomographyProtocol p = build_protocol2(1.0);
  CountData d = pulsed_counts(p, 1e4);
  StateVector c = mlm_reconstruct(p, d).estimate;
  for (auto _ : state) benchmark::DoNotOptimize(make_bundle(p, d, c));
}
BENCHMARK(BM_InformationBundle);

static void BM_SeparateMixture(benchmark::State& state) {
  TomographyProtocol p = build_protocol1(1.0);
  CountData d = mixture_counts(p, reference_mixture(p, 1e4), 11);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(separate_mixture(p, d, 2, ++seed));
}
BENCHMARK(BM_SeparateMixture);

static void BM_PoissonSampling(benchmark::State& state) {
  TomographyProtocol p = build_protocol2(1.0);
  StateVector c = scale_to_events(p, pulsed_state(40.0), 1e5);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_counts(p, c, ++seed));
}
BENCHMARK(BM_PoissonSampling);

BENCHMARK_MAIN();
