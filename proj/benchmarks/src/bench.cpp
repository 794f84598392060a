#include <benchmark/benchmark.h>

#include "hyperwave/hyperwave.hpp"

namespace {

using namespace hyperwave;

Couplings generic(int n) {
  return Couplings::normalized(n, {0.6, 0.0}, {0.9, 0.0}, {1.3, 0.0});
}

SpectralPoint xi_generic(int n) {
  SpectralPoint xi;
  const double res[] = {0.83, 0.37, 1.91, 1.22};
  const double ims[] = {0.21, -0.40, 0.13, 0.55};
  for (int j = 0; j < n; ++j) xi.xi.emplace_back(res[j], ims[j]);
  return xi;
}

PositionPoint x_generic(int n) {
  PositionPoint x;
  for (int j = 0; j < n; ++j) x.x.push_back(1.1 * (n - j) + 0.1);
  return x;
}

void BM_BuildTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int N = static_cast<int>(state.range(1));
  const Couplings g = generic(n);
  const SpectralPoint xi = xi_generic(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_table(Family::bc, xi, g, N));
  }
}
BENCHMARK(BM_BuildTable)->Args({2, 20})->Args({2, 30})->Args({3, 20})->Args({3, 30});

void BM_SeriesEval(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CoeffTable table = build_table(Family::bc, xi_generic(n), generic(n), 30);
  const PositionPoint x = x_generic(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(series_eval(table, x));
  }
}
BENCHMARK(BM_SeriesEval)->Arg(2)->Arg(3);

void BM_Wavefunction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Couplings g = generic(n);
  const SpectralPoint xi = xi_generic(n);
  const PositionPoint x = x_generic(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wavefunction(Family::bc, xi, x, g, 30));
  }
}
BENCHMARK(BM_Wavefunction)->Arg(2)->Arg(3);

void BM_DifferenceLhs(benchmark::State& state) {
  const int n = 2;
  const int ell = static_cast<int>(state.range(0));
  const Couplings g = generic(n);
  const SpectralPoint xi = screen_shift_targets(xi_generic(n), 1e-4, 1);
  const PositionPoint x = x_generic(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(difference_lhs(Family::bc, ell, xi, x, g, 20));
  }
}
BENCHMARK(BM_DifferenceLhs)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
