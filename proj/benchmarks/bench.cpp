#include <benchmark/benchmark.h>

#include "polymatrix/dynamics.hpp"
#include "polymatrix/equilibrium.hpp"
#include "polymatrix/sampling.hpp"

using namespace polymatrix;

namespace {

SamplerConfig config(GameClass cls, std::vector<int> dims) {
  SamplerConfig cfg;
  cfg.game_class = cls;
  cfg.dims = std::move(dims);
  cfg.seed = 42;
  cfg.samples = 1;
  return cfg;
}

void BM_SampleAndConsolidate(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  auto cfg = config(GameClass::General, {k, k, k});
  for (auto _ : state)
    benchmark::DoNotOptimize(consolidate(sample_game(cfg, 0)));
}
BENCHMARK(BM_SampleAndConsolidate)->Arg(2)->Arg(8)->Arg(32);

void BM_EquilibriumSet(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  auto g = sample_game(config(GameClass::ZeroSum, {k, k, k}), 0);
  for (auto _ : state) benchmark::DoNotOptimize(equilibrium_set(g));
}
BENCHMARK(BM_EquilibriumSet)->Arg(2)->Arg(8)->Arg(32);

void BM_LeibnizDet(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  GaussianStream rng(7, 0);
  Matrix A(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) A(r, c) = rng.gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(leibniz_det(A));
}
BENCHMARK(BM_LeibnizDet)->DenseRange(4, 9);

void BM_MonteCarlo(benchmark::State& state) {
  auto cfg = config(GameClass::ZeroSum, {2, 2, 2});
  cfg.samples = 200;
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(mc_unique_fraction(cfg, workers));
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4);

void BM_SimulateExact(benchmark::State& state) {
  auto g = sample_game(config(GameClass::ZeroSum, {2, 2, 2}), 0);
  Vector x0 = Vector::Ones(6);
  IntegratorConfig cfg;
  cfg.horizon = 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(g, x0, cfg));
}
BENCHMARK(BM_SimulateExact);

void BM_SimulateRk4(benchmark::State& state) {
  auto g = sample_game(config(GameClass::ZeroSum, {2, 2, 2}), 0);
  Vector x0 = Vector::Ones(6);
  IntegratorConfig cfg;
  cfg.method = IntegratorMethod::RungeKutta4;
  cfg.horizon = 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(g, x0, cfg));
}
BENCHMARK(BM_SimulateRk4);

}  // namespace

BENCHMARK_MAIN();
