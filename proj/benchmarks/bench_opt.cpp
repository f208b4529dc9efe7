#include <benchmark/benchmark.h>

#include <swidopt/threshold_opt.hpp>

namespace {

swidopt::Scenario iid_scenario(int m) {
  swidopt::Scenario sc;
  for (int i = 0; i < m; ++i) {
    sc.users.push_back({i + 1, {swidopt::FadingFamily::RayleighSISO, 10.0}});
  }
  sc.weights.assign(m, 1.0);
  return sc;
}

void BM_WeightedSumThresholds(benchmark::State& state) {
  const auto sc = iid_scenario(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(swidopt::weighted_sum_thresholds(sc));
  }
}
BENCHMARK(BM_WeightedSumThresholds)->Arg(2)->Arg(10)->Arg(50);

void BM_OptimizeWithReport(benchmark::State& state) {
  const auto sc = iid_scenario(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(swidopt::optimize_weighted_sum(sc));
  }
}
BENCHMARK(BM_OptimizeWithReport)->Arg(2)->Arg(10);

void BM_PfThreshold(benchmark::State& state) {
  const swidopt::RateDistribution dist({swidopt::FadingFamily::RayleighSISO, 10.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        swidopt::pf_threshold(dist, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_PfThreshold)->Arg(1)->Arg(9)->Arg(19);

}  // namespace
