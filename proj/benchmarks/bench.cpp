#include <benchmark/benchmark.h>

#include "tft/arrow.hpp"
#include "tft/ftype.hpp"
#include "tft/height.hpp"
#include "tft/oracle.hpp"

namespace {

void BM_TypeOfVertex(benchmark::State& state) {
    const auto growth = tft::GrowthFunction::minimal(2, 2048);
    const auto oracle = tft::HypergraphOracle::random(2, 7);
    const tft::Vertex v = static_cast<tft::Vertex>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(tft::type_of_vertex(oracle, growth, v));
    }
}
BENCHMARK(BM_TypeOfVertex)->Arg(64)->Arg(512)->Arg(2000);

void BM_Meet(benchmark::State& state) {
    const auto growth = tft::GrowthFunction::minimal(2, 2048);
    const auto oracle = tft::HypergraphOracle::random(2, 7);
    const auto x = tft::type_of_vertex(oracle, growth, static_cast<tft::Vertex>(state.range(0)));
    const auto y = tft::type_of_vertex(oracle, growth, static_cast<tft::Vertex>(state.range(0)) - 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tft::meet(x, y));
    }
}
BENCHMARK(BM_Meet)->Arg(64)->Arg(512)->Arg(2000);

void BM_VertexHeightCached(benchmark::State& state) {
    const auto growth = tft::GrowthFunction::minimal(2, 1024);
    const auto oracle = tft::HypergraphOracle::random(2, 7);
    tft::TypeCache cache(oracle, growth);
    cache.build(static_cast<tft::Vertex>(state.range(0)));
    tft::Vertex v = 1;
    for (auto _ : state) {
        const tft::Vertex w = (v * 2654435761u) % state.range(0);
        benchmark::DoNotOptimize(tft::vertex_height(cache, w, w == 0 ? 1 : 0));
        ++v;
    }
}
BENCHMARK(BM_VertexHeightCached)->Arg(256)->Arg(1024);

void BM_EnumerateLevel(benchmark::State& state) {
    const auto growth = tft::GrowthFunction::minimal(2, 8);
    for (auto _ : state) {
        std::uint64_t count = 0;
        tft::for_each_type_at_level(growth, static_cast<tft::Level>(state.range(0)), 10'000'000,
                                    [&](const tft::FType&) { ++count; });
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_EnumerateLevel)->Arg(3)->Arg(4);

void BM_ArrowPigeonhole(benchmark::State& state) {
    const auto zero = [](std::span<const tft::Vertex>) { return tft::BigInt(0); };
    tft::ArrowInstance instance{tft::FiniteHypergraph(2, 4, zero),
                                tft::FiniteHypergraph(2, 2, zero),
                                tft::FiniteHypergraph(2, 1, zero), 2, 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(tft::arrow_check(instance));
    }
}
BENCHMARK(BM_ArrowPigeonhole);

} // namespace

BENCHMARK_MAIN();
