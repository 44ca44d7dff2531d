#include <benchmark/benchmark.h>

#include "crw/eigenfunctions.hpp"
#include "crw/initial_data.hpp"
#include "crw/oracle.hpp"
#include "crw/quadrature.hpp"
#include "crw/simulator.hpp"
#include "crw/spectrum.hpp"

namespace {

using namespace crw;

void BM_NuRootComplex(benchmark::State& state) {
  const ModelParams p(0.8);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nu_root(p, n, 1));
}
BENCHMARK(BM_NuRootComplex)->Arg(1)->Arg(10)->Arg(200);

void BM_NuRootReal(benchmark::State& state) {
  const ModelParams p(0.05);
  for (auto _ : state) benchmark::DoNotOptimize(nu_root(p, 3, 2));
}
BENCHMARK(BM_NuRootReal);

void BM_SpectrumSlice(benchmark::State& state) {
  const ModelParams p(0.8);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_slice(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SpectrumSlice)->Arg(10)->Arg(30);

void BM_Shoot(benchmark::State& state) {
  const ModelParams p(0.8);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shoot(p, Complex{-2.6, 3.3}, steps));
}
BENCHMARK(BM_Shoot)->Arg(1000)->Arg(100000);

void BM_ShootTrajectory(benchmark::State& state) {
  const ModelParams p(0.8);
  for (auto _ : state) benchmark::DoNotOptimize(shoot_trajectory(p, Complex{-2.6, 3.3}, 10000));
}
BENCHMARK(BM_ShootTrajectory);

void BM_RefineEigenvalue(benchmark::State& state) {
  const ModelParams p(0.8);
  const Complex seed = lambda_from_nu(p, nu_root(p, 5, 1)).lambda;
  for (auto _ : state) benchmark::DoNotOptimize(refine_eigenvalue(p, seed));
}
BENCHMARK(BM_RefineEigenvalue);

void BM_SimulatorStep(benchmark::State& state) {
  const ModelParams p(1.0);
  const int n = static_cast<int>(state.range(0));
  State s = box_data(n);
  const double dt = unit_cfl_dt(n, p);
  for (auto _ : state) {
    s = step(s, p, dt);
    benchmark::DoNotOptimize(s.u.data());
  }
  state.SetItemsProcessed(state.iterations() * (n + 1));
}
BENCHMARK(BM_SimulatorStep)->Arg(2000)->Arg(20000);

void BM_RotationNumber(benchmark::State& state) {
  const ModelParams p(0.8);
  const auto fn = evaluate(lambda_from_nu(p, nu_root(p, 10, 1)), uniform_grid(2000));
  for (auto _ : state) benchmark::DoNotOptimize(rotation_number(fn));
}
BENCHMARK(BM_RotationNumber);

}  // namespace

BENCHMARK_MAIN();
