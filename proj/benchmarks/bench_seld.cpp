#include <benchmark/benchmark.h>

#include <swidopt/seld.hpp>

namespace {

void BM_SeldRates(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::vector<swidopt::ChannelModel> models;
  for (int i = 0; i < m; ++i) {
    models.push_back({swidopt::FadingFamily::RayleighSISO, 1.0 + 3.0 * i});
  }
  const std::vector<double> weights(m, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(swidopt::seld_rates(models, weights));
  }
}
BENCHMARK(BM_SeldRates)->Arg(2)->Arg(5)->Arg(10);

void BM_SeldIidSumCapacity(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(swidopt::seld_iid_sum_capacity(10.0, m));
  }
}
BENCHMARK(BM_SeldIidSumCapacity)->Arg(5)->Arg(20)->Arg(40);

}  // namespace
