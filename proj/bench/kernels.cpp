#include <benchmark/benchmark.h>

#include "radfact/finite_lattice.hpp"
#include "radfact/ideal_systems.hpp"
#include "radfact/instances.hpp"
#include "radfact/representation.hpp"

using namespace radfact;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_ValidateTables(benchmark::State& state) {
  const auto L = materialize_from_divisors(state.range(0));
  const auto& t = L->tables();
  const auto exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(validate_tables(t, exec));
  state.SetLabel(std::to_string(t.size()) + " elements");
}

void BM_AllPredicates(benchmark::State& state) {
  const auto L = materialize_from_divisors(state.range(0));
  const auto exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(all_predicates(*L, exec));
}

void BM_ValidateSystem(benchmark::State& state) {
  const auto r = WeakIdealSystem::d_ring(FiniteMonoid::zmod(static_cast<std::size_t>(state.range(0)), true));
  const auto exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(validate_system(r, exec));
}

void BM_VerifyIso(benchmark::State& state) {
  LatticeHandle L = dedekind(3);
  const auto w = make_window(*L, static_cast<std::size_t>(state.range(0)), 1);
  const auto phi = build_phi(L, w);
  const auto exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(verify_iso(phi, w.sample, 1, exec));
}

}  // namespace

BENCHMARK(BM_ValidateTables)->ArgsProduct({{360, 720, 5040}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AllPredicates)->ArgsProduct({{360, 720}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ValidateSystem)->ArgsProduct({{8, 10, 12}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyIso)->ArgsProduct({{100, 200}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
