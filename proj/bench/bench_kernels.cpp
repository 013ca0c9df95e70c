#include <benchmark/benchmark.h>

#include <numbers>

#include "blowup/map_lift.hpp"
#include "blowup/sampling.hpp"
#include "blowup/sigma_dynamics.hpp"

using namespace blowup;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void set_label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_Commutation(benchmark::State& state) {
  const MapSpec spec = MapSpec::paper_example_c1();
  const auto samples = sample_blowup_points(Field::Real, 2, static_cast<std::size_t>(state.range(1)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(commutation_residuals(spec, samples, 1e-10, exec_of(state)));
  }
  set_label(state);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_Functoriality(benchmark::State& state) {
  const MapSpec g = MapSpec::rotation_scaling(2.0, std::numbers::pi / 6);
  const MapSpec h = MapSpec::paper_example_c1();
  const auto samples = sample_blowup_points(Field::Real, 2, static_cast<std::size_t>(state.range(1)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(functoriality_residuals(g, h, samples, 1e-9, exec_of(state)));
  }
  set_label(state);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_FixedScan(benchmark::State& state) {
  Eigen::MatrixXd a(3, 3);
  a << 1, 2, 0, 0, 3, 1, 1, 0, -2;
  const SigmaMap f(Matrix::from_real(a));
  const auto map = [&](const ProjPoint& p) { return f(p); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_fixed_scan(map, 3, static_cast<int>(state.range(1)), 1e-6, exec_of(state)));
  }
  set_label(state);
}

}  // namespace

BENCHMARK(BM_Commutation)->ArgsProduct({{0, 1}, {10000, 100000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Functoriality)->ArgsProduct({{0, 1}, {10000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FixedScan)->ArgsProduct({{0, 1}, {10000, 40000}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
