#include <benchmark/benchmark.h>

#include <zslab/algebra.hpp>
#include <zslab/invariants.hpp>
#include <zslab/sequence.hpp>
#include <zslab/subgroup.hpp>

namespace {

using zslab::AbelianGroup;

const AbelianGroup& c3_15() {
  static const AbelianGroup g = AbelianGroup::from_moduli({3, 15});
  return g;
}

void BM_SigmaSet(benchmark::State& state) {
  const zslab::Sequence s = zslab::random_regular(c3_15(), static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(zslab::sigma_set(s));
}
BENCHMARK(BM_SigmaSet)->Arg(6)->Arg(12)->Arg(18);

void BM_Regularity(benchmark::State& state) {
  const zslab::SubgroupLattice lattice(c3_15());
  const zslab::Sequence s = zslab::random_regular(lattice, 18, 2);
  for (auto _ : state) benchmark::DoNotOptimize(zslab::is_regular(s, lattice));
}
BENCHMARK(BM_Regularity);

void BM_SubgroupLattice(benchmark::State& state) {
  const AbelianGroup g = AbelianGroup::from_moduli({static_cast<std::int64_t>(state.range(0)), state.range(1)});
  for (auto _ : state) benchmark::DoNotOptimize(zslab::all_subgroups(g));
}
BENCHMARK(BM_SubgroupLattice)->Args({3, 15})->Args({6, 6})->Args({4, 12});

void BM_VanishingAssignment(benchmark::State& state) {
  const zslab::GroupAlgebra algebra(c3_15());
  const zslab::Sequence s = zslab::random_regular(c3_15(), static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(zslab::exists_vanishing_assignment(s, algebra));
}
BENCHMARK(BM_VanishingAssignment)->Arg(4)->Arg(8);

void BM_LongestRegularNonbasis(benchmark::State& state) {
  const AbelianGroup g = AbelianGroup::from_moduli({static_cast<std::int64_t>(state.range(0)), state.range(0)});
  for (auto _ : state) benchmark::DoNotOptimize(zslab::longest_regular_nonbasis(g));
}
BENCHMARK(BM_LongestRegularNonbasis)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ZeroSumFree(benchmark::State& state) {
  const AbelianGroup g = AbelianGroup::from_moduli({static_cast<std::int64_t>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(zslab::longest_zero_sumfree(g));
}
BENCHMARK(BM_ZeroSumFree)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
