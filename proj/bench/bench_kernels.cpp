#include <benchmark/benchmark.h>

#include <map>

#include "ddwl/coherent.hpp"
#include "ddwl/construction.hpp"
#include "ddwl/designs.hpp"
#include "ddwl/srings.hpp"

using namespace ddwl;

namespace {

const Family& family(std::uint32_t q) {
  static std::map<std::uint32_t, Family> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, Family::of_order(q)).first;
  return it->second;
}

void BM_RefineRound(benchmark::State& state, Kernel kernel) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const Digraph g = family(q).build_cayley(family(q).generators_I().front());
  const PairColoring start = refine_round(initial_coloring(g));
  for (auto _ : state) {
    PairColoring out = kernel == Kernel::parallel ? refine_round(start) : refine_round_reference(start);
    benchmark::DoNotOptimize(out.color.data());
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t{g.size()} * g.size());
}

void BM_VerifyDdd(benchmark::State& state, DesignKernel kernel) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const Digraph g = family(q).build_cayley(Fe{1});
  const auto classes = coset_classes(family(q).group());
  const auto expected = expected_ddd_parameters(q, false);
  for (auto _ : state) benchmark::DoNotOptimize(verify_ddd(g, classes, expected, kernel).counts_ok);
}

void BM_DesignIso(benchmark::State& state, DesignKernel kernel) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_design_iso(family(q), Fe{1}, PairCheck::exhaustive, 0, kernel).crit_holds);
  }
}

void BM_StructureConstants(benchmark::State& state, ConstantsMode mode) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const SRing ring = SRing::cyclotomic(family(q));
  for (auto _ : state) benchmark::DoNotOptimize(structure_constants(ring, mode).rank());
}

}  // namespace

BENCHMARK_CAPTURE(BM_RefineRound, parallel, Kernel::parallel)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RefineRound, reference, Kernel::reference)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyDdd, parallel, DesignKernel::parallel)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyDdd, reference, DesignKernel::reference)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DesignIso, parallel, DesignKernel::parallel)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DesignIso, reference, DesignKernel::reference)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_StructureConstants, sampled, ConstantsMode::sampled)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_StructureConstants, full, ConstantsMode::full)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_StructureConstants, full_convolution, ConstantsMode::full_convolution)
    ->Arg(5)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
