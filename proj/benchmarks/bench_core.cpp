#include <benchmark/benchmark.h>

#include "hmcf/fields.hpp"
#include "hmcf/simulate.hpp"

using namespace hmcf;

namespace {

const Frame kFrame = make_frame(1.0, {0.8, 0.6}, Mat2::diagonal(1.0, -0.5), 1e-14);
const PParameter kP(50.0);

void BM_FpValue(benchmark::State& state) {
  double theta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_p(kFrame, kP, theta));
    theta += 1e-3;
  }
}
BENCHMARK(BM_FpValue);

void BM_OptimalAngleStationary(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_angle_stationary(kFrame, kP));
  }
}
BENCHMARK(BM_OptimalAngleStationary);

void BM_OptimalAngleGrid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_angle_grid(kFrame, kP, n));
  }
}
BENCHMARK(BM_OptimalAngleGrid)->Arg(64)->Arg(256)->Arg(1024);

void BM_HamiltonianHp(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(H_p(kFrame, kP));
  }
}
BENCHMARK(BM_HamiltonianHp);

void BM_GaussianPair(benchmark::State& state) {
  std::uint64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_pair(42, 7, k++));
  }
}
BENCHMARK(BM_GaussianPair);

void BM_StepMidpoint(benchmark::State& state) {
  const Mat2 nu = control_from_angle(0.3, 0.0).nu;
  Point3 x{1.0, 1.0, 0.0};
  std::uint64_t k = 0;
  for (auto _ : state) {
    x = step(x, nu, 0.03 * gaussian_pair(1, 2, k++));
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_StepMidpoint);

void BM_TerminalStates(benchmark::State& state) {
  SimConfig cfg;
  cfg.t_final = 0.1;
  cfg.dt = 1e-3;
  cfg.n_paths = static_cast<std::uint64_t>(state.range(0));
  cfg.seed = 9;
  cfg.threads = 1;
  const Policy pol = ConstantPolicy{control_from_angle(0.3, 0.0).nu};
  for (auto _ : state) {
    benchmark::DoNotOptimize(terminal_states({1, 0, 0}, pol, cfg));
  }
}
BENCHMARK(BM_TerminalStates)->Arg(100)->Arg(1000);

void BM_SweepSphere(benchmark::State& state) {
  const ScalarField g = unit_sphere_field();
  const auto pts = surface_grid(NamedSurface::kSphereUnitC001, 17, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_surface(g, pts, PParameter(5), 1.0, 1e-10));
  }
}
BENCHMARK(BM_SweepSphere);

}  // namespace

BENCHMARK_MAIN();
