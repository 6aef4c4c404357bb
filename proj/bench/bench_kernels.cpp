#include <benchmark/benchmark.h>

#include "coupler/fock.hpp"
#include "coupler/presets.hpp"
#include "coupler/sweep.hpp"

using namespace coupler;

namespace {

ScenarioConfig sweep_config(benchmark::State& state) {
  ScenarioConfig cfg = preset("fig7");
  cfg.z_steps = static_cast<int>(state.range(0));
  return cfg;
}

void BM_SweepParallel(benchmark::State& state) {
  const ScenarioConfig cfg = sweep_config(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.z_steps);
}

void BM_SweepSerial(benchmark::State& state) {
  const ScenarioConfig cfg = sweep_config(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario_serial(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.z_steps);
}

fock::FockConfig oracle_config(int cutoff) {
  CouplerParams p;
  p.gS1 = 0.3;
  p.gS2 = cd(0.2, 0.1);
  p.kappaS = cd(0.0, 0.8);
  return {{Mode::S1, Mode::V1, Mode::S2, Mode::V2}, cutoff, p};
}

template <bool Parallel>
void BM_Matvec(benchmark::State& state) {
  const fock::SparseOperator h = fock::build_hamiltonian(oracle_config(static_cast<int>(state.range(0))));
  const fock::StateVector x = fock::StateVector::Ones(h.rows());
  fock::StateVector y(h.rows());
  for (auto _ : state) {
    if constexpr (Parallel) {
      fock::apply_hamiltonian(h, x, y);
    } else {
      fock::apply_hamiltonian_serial(h, x, y);
    }
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * h.nonZeros());
}

template <bool Parallel>
void BM_ThermalEvolution(benchmark::State& state) {
  const fock::FockConfig cfg = oracle_config(static_cast<int>(state.range(0)));
  const fock::SparseOperator h = fock::build_hamiltonian(cfg);
  std::array<fock::FockInput, kModeCount> in{};
  in[index(Mode::V1)].n_th = 0.3;
  in[index(Mode::V2)].n_th = 0.2;
  const fock::FockMixture m0 = fock::initial_mixture(cfg, in);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(fock::evolve(cfg, h, m0, 0.5));
    } else {
      benchmark::DoNotOptimize(fock::evolve_serial(cfg, h, m0, 0.5));
    }
  }
  state.counters["members"] = static_cast<double>(m0.states.size());
}

}  // namespace

BENCHMARK(BM_SweepParallel)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Matvec<true>)->Arg(8)->Arg(16)->UseRealTime();
BENCHMARK(BM_Matvec<false>)->Arg(8)->Arg(16)->UseRealTime();
BENCHMARK(BM_ThermalEvolution<true>)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ThermalEvolution<false>)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
