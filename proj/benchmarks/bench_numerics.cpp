#include <benchmark/benchmark.h>

#include <cmath>
#include <swidopt/numerics.hpp>

namespace {

void BM_ExpIntegralE1(benchmark::State& state) {
  const double x = std::pow(10.0, state.range(0) / 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(swidopt::exp_integral_e1(x));
  }
}
BENCHMARK(BM_ExpIntegralE1)->Arg(-20)->Arg(0)->Arg(10)->Arg(30);

void BM_SemiInfiniteQuadrature(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        swidopt::integrate([](double u) { return u * std::exp(-u); }, 0.0, swidopt::kInf));
  }
}
BENCHMARK(BM_SemiInfiniteQuadrature);

void BM_FindRoot(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(swidopt::find_root(
        [](double x) { return x * (1.0 - std::exp(-x)) - std::exp(-x); }, 0.0, 5.0));
  }
}
BENCHMARK(BM_FindRoot);

}  // namespace
