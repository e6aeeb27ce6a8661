#include <benchmark/benchmark.h>

#include "chordisc/buffon.hpp"
#include "chordisc/construct.hpp"

using namespace chordisc;

static void BM_ExactDisk(benchmark::State& state)
{
    const ChordSet set =
        build_transport(unit_disk(), static_cast<std::size_t>(state.range(0)), SequenceKind::hammersley_base2, 0).set;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_discrepancy_disk(set).value);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactDisk)->RangeMultiplier(2)->Range(16, 512)->Complexity();

static void BM_ExactPolygon(benchmark::State& state)
{
    const ChordSet set =
        build_transport(unit_square(), static_cast<std::size_t>(state.range(0)), SequenceKind::hammersley_base2, 0).set;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_discrepancy_polygon(set).value);
    }
}
BENCHMARK(BM_ExactPolygon)->RangeMultiplier(2)->Range(16, 128);

static void BM_MonteCarlo(benchmark::State& state)
{
    const ChordSet set = build_transport(unit_disk(), 256, SequenceKind::hammersley_base2, 0).set;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc_discrepancy(set, static_cast<std::size_t>(state.range(0)), 1).value);
    }
}
BENCHMARK(BM_MonteCarlo)->Arg(1000)->Arg(10000);
