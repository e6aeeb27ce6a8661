#include <benchmark/benchmark.h>

#include "chordisc/lowdisc.hpp"

using namespace chordisc;

namespace {

std::vector<Point> transported(std::size_t n, const EndpointMeasure& mu)
{
    return to_points(transport_to_measure(ld_sequence_2d(n, SequenceKind::hammersley_base2), mu).pairs);
}

}  // namespace

static void BM_AnchoredRect(benchmark::State& state)
{
    const EndpointMeasure mu(unit_disk());
    const std::vector<Point> pts = transported(static_cast<std::size_t>(state.range(0)), mu);
    const AnchoredFunction mass = measure_mass(mu);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rect_discrepancy(pts, mass, RectFamily::anchored).value);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AnchoredRect)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void BM_AllRect(benchmark::State& state)
{
    const EndpointMeasure mu(unit_disk());
    const std::vector<Point> pts = transported(static_cast<std::size_t>(state.range(0)), mu);
    const AnchoredFunction mass = measure_mass(mu);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rect_discrepancy(pts, mass, RectFamily::all).value);
    }
}
BENCHMARK(BM_AllRect)->RangeMultiplier(2)->Range(32, 256);

static void BM_Sequence(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(ld_sequence_2d(4096, static_cast<SequenceKind>(state.range(0))).points.data());
    }
}
BENCHMARK(BM_Sequence)->DenseRange(0, 3);
