#include <benchmark/benchmark.h>

#include "lylab/correlations.hpp"
#include "lylab/engine.hpp"
#include "lylab/polyengine.hpp"
#include "lylab/quantum.hpp"
#include "lylab/roots.hpp"
#include "lylab/thermo.hpp"

using namespace lylab;

static void BM_EngineIsingSquare(benchmark::State& state) {
  int L = static_cast<int>(state.range(0));
  auto m = ising_model(LatticeSpec::square(L, L), 1, 0.5, {0.3, 0.7});
  PartitionEngine engine(m);
  auto f = engine.model_fields();
  for (auto _ : state) benchmark::DoNotOptimize(engine.evaluate(f));
}
BENCHMARK(BM_EngineIsingSquare)->Arg(3)->Arg(4)->Arg(5);

static void BM_EngineUniformChain(benchmark::State& state) {
  int L = static_cast<int>(state.range(0));
  auto m = SpinModel(LatticeSpec::chain(L), SingleSpinMeasure::uniform(-1, 1),
                     Interaction::from_kernel(LatticeSpec::chain(L), Kernel::nearest_neighbour(1, 1)),
                     FieldSpec::uniform({0.5, 0.2}), 1);
  PartitionEngine engine(m);
  auto f = engine.model_fields();
  for (auto _ : state) benchmark::DoNotOptimize(engine.evaluate(f));
}
BENCHMARK(BM_EngineUniformChain)->Arg(4)->Arg(8);

static void BM_PartitionPolynomial(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto m = ising_model(LatticeSpec::chain(n), 1, 1, {0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(partition_polynomial(m));
}
BENCHMARK(BM_PartitionPolynomial)->Arg(8)->Arg(12)->Arg(16);

static void BM_ActivityRoots(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto a = partition_polynomial(ising_model(LatticeSpec::chain(n), 1, 1, {0, 0})).uniform_reduction();
  for (auto _ : state) benchmark::DoNotOptimize(roots_activity(a));
}
BENCHMARK(BM_ActivityRoots)->Arg(8)->Arg(16);

static void BM_UrsellRoutes(benchmark::State& state) {
  auto m = ising_model(LatticeSpec::square(3, 3), 0.8, 1, {0.4, 0.2});
  UrsellSpec spec{{0, 1, 4, 8}, {}};
  bool epsilon = state.range(0) == 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(epsilon ? ursell_epsilon_derivative(m, spec) : ursell_moebius(m, spec));
}
BENCHMARK(BM_UrsellRoutes)->Arg(0)->Arg(1);

static void BM_TransferStrip(benchmark::State& state) {
  int w = static_cast<int>(state.range(0));
  auto m = ising_strip(w, 1, 0.44, {0.1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(mass_gap(build_transfer(m)));
}
BENCHMARK(BM_TransferStrip)->Arg(2)->Arg(4)->Arg(6);

static void BM_QuantumPartition(benchmark::State& state) {
  int sites = static_cast<int>(state.range(0));
  auto q = QuantumModel::all_to_all(sites, 0.5, 1, {1, 0.5, -0.5});
  q.set_uniform_field({Complex(0.5, 0.4), 0.1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(quantum_partition(q));
}
BENCHMARK(BM_QuantumPartition)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
