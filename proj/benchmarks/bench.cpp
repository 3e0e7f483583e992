#include <benchmark/benchmark.h>

#include "cw/abelian.hpp"
#include "cw/constraints.hpp"
#include "cw/feasibility.hpp"
#include "cw/groups.hpp"

namespace {

using namespace cw;

void BM_GroupClosure_D24(benchmark::State& state) {
  for (auto _ : state) {
    auto built = groups::build_dihedral(12);
    benchmark::DoNotOptimize(built.group.order());
  }
}
BENCHMARK(BM_GroupClosure_D24);

void BM_GroupClosure_S5(benchmark::State& state) {
  for (auto _ : state) {
    auto built = groups::build_symmetric(5);
    benchmark::DoNotOptimize(built.group.order());
  }
}
BENCHMARK(BM_GroupClosure_S5);

void BM_CocyclicLattice(benchmark::State& state) {
  // C2^5 x C3: 33 cocyclic subgroups over two primes
  const auto shape =
      abelian::Shape::from_invariants({2, 2, 2, 2, 2, 3});
  for (auto _ : state) {
    abelian::Lattice lat(shape);
    benchmark::DoNotOptimize(lat.cocyclic().size());
  }
}
BENCHMARK(BM_CocyclicLattice);

void BM_MValuesClosed(benchmark::State& state) {
  const auto shape = abelian::Shape::from_invariants({3, 3, 5, 5, 7, 7});
  for (auto _ : state) {
    auto m = abelian::m_values_closed(shape);
    benchmark::DoNotOptimize(m.m_a);
  }
}
BENCHMARK(BM_MValuesClosed);

void BM_BuildSystem_D24(benchmark::State& state) {
  auto built = groups::build_dihedral(12);
  auto cands = constraints::variable_classes(built.group, built.base, 12);
  for (auto _ : state) {
    auto sys = constraints::build_system(cands[0]);
    benchmark::DoNotOptimize(sys.rows.size());
  }
}
BENCHMARK(BM_BuildSystem_D24);

void BM_SolveFlagship(benchmark::State& state) {
  auto built = groups::build_dihedral(12);
  auto cands = constraints::variable_classes(built.group, built.base, 12);
  const auto sys = constraints::build_system(cands[0]);
  for (auto _ : state) {
    auto sols = feasibility::enumerate_integer_solutions(sys);
    benchmark::DoNotOptimize(sols.solutions.size());
  }
}
BENCHMARK(BM_SolveFlagship);

void BM_LpExtremum(benchmark::State& state) {
  auto built = groups::build_gen_dihedral({3, 3});
  auto cands = constraints::variable_classes(built.group, built.base, 3);
  const auto sys = constraints::build_system(cands[0]);
  for (auto _ : state) {
    auto res = feasibility::lp_extremum(sys, 0, /*maximize=*/false);
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_LpExtremum);

}  // namespace

BENCHMARK_MAIN();
