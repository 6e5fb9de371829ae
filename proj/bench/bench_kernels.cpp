// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include "landau/beam_dynamics.hpp"
#include "landau/guiding_center.hpp"
#include "landau/kernels.hpp"

using namespace landau;

namespace {

const LandauState& state() {
  static const LandauState s({3, 7});
  return s;
}

GridSpec grid(const benchmark::State& st) { return GridSpec{static_cast<int>(st.range(0)), 14.0}; }

void BM_sample_state(benchmark::State& st) {
  const auto g = grid(st);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::sample_state(state(), g));
}

void BM_sample_state_serial(benchmark::State& st) {
  const auto g = grid(st);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::sample_state(state(), g));
}

void BM_derivative(benchmark::State& st) {
  const auto psi = kernels::sample_state(state(), grid(st));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::derivative_x(psi, 8));
}

void BM_derivative_serial(benchmark::State& st) {
  const auto psi = kernels::sample_state(state(), grid(st));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::derivative_x(psi, 8));
}

void BM_currents(benchmark::State& st) {
  for (auto _ : st) {
    auto f = FieldGrid::cartesian(grid(st));
    kernels::sample_currents(state(), f);
    benchmark::DoNotOptimize(f);
  }
}

void BM_currents_serial(benchmark::State& st) {
  for (auto _ : st) {
    auto f = FieldGrid::cartesian(grid(st));
    kernels::serial::sample_currents(state(), f);
    benchmark::DoNotOptimize(f);
  }
}

const Superposition& masked() {
  static const Superposition s = project_masked(LandauState({0, 5}), MaskSpec{}).superposition;
  return s;
}

void BM_evaluate_modes(benchmark::State& st) {
  const auto g = grid(st);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::evaluate_modes(masked().blocks(), masked().units(), g));
}

void BM_evaluate_modes_serial(benchmark::State& st) {
  const auto g = grid(st);
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::serial::evaluate_modes(masked().blocks(), masked().units(), g));
}

void BM_guiding_ops(benchmark::State& st) {
  const auto psi = kernels::sample_state(state(), grid(st));
  for (auto _ : st) benchmark::DoNotOptimize(apply_guiding_ops(psi));
}

}  // namespace

BENCHMARK(BM_sample_state)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_state_serial)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_derivative)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_derivative_serial)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_currents)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_currents_serial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_evaluate_modes)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_evaluate_modes_serial)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_guiding_ops)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
