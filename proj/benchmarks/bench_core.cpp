#include <benchmark/benchmark.h>

#include "pspin/experiments.hpp"

using namespace pspin;

namespace {

ModelSpec sub_spec(int n, int p) {
  return ModelSpec{n, p, Uniform{}, Representation::subspace(n)};
}

void BM_TargetHamiltonian(benchmark::State& state) {
  ModelSpec spec{static_cast<int>(state.range(0)), 3, Uniform{},
                 Representation::full(static_cast<int>(state.range(0)))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(target_hamiltonian(spec).mat);
  }
}
BENCHMARK(BM_TargetHamiltonian)->Arg(6)->Arg(8)->Arg(10);

void BM_NcPotential(benchmark::State& state) {
  const ModelSpec spec = sub_spec(20, 3);
  const Operator h = h0(spec, 0.5);
  const Operator dh = dh0(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        nc_potential(h, dh, static_cast<int>(state.range(0))).potential.mat);
  }
}
BENCHMARK(BM_NcPotential)->Arg(1)->Arg(3)->Arg(8);

void BM_CaPotential(benchmark::State& state) {
  const ModelSpec spec = sub_spec(static_cast<int>(state.range(0)), 3);
  const Operator h = h0(spec, 0.5);
  const Operator dh = dh0(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ca_potential(h, dh).potential.mat);
  }
}
BENCHMARK(BM_CaPotential)->Arg(20)->Arg(100);

void BM_Propagate(benchmark::State& state) {
  const ModelSpec spec = sub_spec(static_cast<int>(state.range(0)), 3);
  AnsatzSpec ca{AnsatzKind::Cyclic, 1, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        propagate(spec, ca, Schedule{0.1}, 1e-2).fidelity);
  }
}
BENCHMARK(BM_Propagate)->Arg(10)->Arg(50)->Arg(100);

void BM_MinimalGap(benchmark::State& state) {
  const ModelSpec spec = sub_spec(static_cast<int>(state.range(0)), 3);
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimal_gap(spec, grid).gap);
  }
}
BENCHMARK(BM_MinimalGap)->Arg(20)->Arg(60);

void BM_WeightedTraceProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Representation rep = Representation::full(n);
  DickeEmbedding emb = dicke_embedding(n);
  SpinOps s = collective_spin_ops(n, rep);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weighted_trace_product(s.y, s.y, 0.25, &emb));
  }
}
BENCHMARK(BM_WeightedTraceProduct)->Arg(6)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
