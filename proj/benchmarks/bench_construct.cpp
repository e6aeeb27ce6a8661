#include <benchmark/benchmark.h>

#include "chordisc/construct.hpp"

using namespace chordisc;

static void BM_TransportDisk(benchmark::State& state)
{
    for (auto _ : state) {
        const BuildResult r = build_transport(unit_disk(), static_cast<std::size_t>(state.range(0)),
                                              SequenceKind::hammersley_base2, 0, false, RectAudit::none);
        benchmark::DoNotOptimize(r.set.size());
    }
}
BENCHMARK(BM_TransportDisk)->RangeMultiplier(4)->Range(256, 16384);

static void BM_TransportPolygon(benchmark::State& state)
{
    const ConvexBody hex = make_regular_polygon(6, {0, 0}, 1.0);
    for (auto _ : state) {
        const BuildResult r = build_transport(hex, static_cast<std::size_t>(state.range(0)),
                                              SequenceKind::hammersley_base2, 0, false, RectAudit::none);
        benchmark::DoNotOptimize(r.set.size());
    }
}
BENCHMARK(BM_TransportPolygon)->RangeMultiplier(4)->Range(256, 4096);

static void BM_CorrectLength(benchmark::State& state)
{
    const ChordSet base = build_transport(unit_square(), 512, SequenceKind::hammersley_base2, 0).set;
    for (auto _ : state) {
        benchmark::DoNotOptimize(correct_length(base, base.total_length() + 25.0).second.added.size());
    }
}
BENCHMARK(BM_CorrectLength);
