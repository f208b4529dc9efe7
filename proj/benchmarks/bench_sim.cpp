#include <benchmark/benchmark.h>

#include <swidopt/simulator.hpp>
#include <swidopt/threshold_opt.hpp>

namespace {

void BM_Simulate(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  swidopt::Scenario sc;
  for (int i = 0; i < m; ++i) {
    sc.users.push_back({i + 1, {swidopt::FadingFamily::RayleighSISO, 10.0}});
  }
  sc.weights.assign(m, 1.0);
  const auto opt = swidopt::optimize_weighted_sum(sc);
  swidopt::SimConfig cfg;
  cfg.resource_units = 100000;
  cfg.seed = 1;
  cfg.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(swidopt::simulate(sc, opt.thresholds, cfg));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(cfg.resource_units));
}
BENCHMARK(BM_Simulate)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
