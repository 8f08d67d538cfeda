// Microbenchmarks for the hot kernels: grid counting, segment compression,
// proximity intersection, and attractor generation. Run with
// --benchmark_filter=... to narrow; counts are chosen so a full run stays
// under a minute on a laptop.

#include "fdim/bits.hpp"
#include "fdim/compressor.hpp"
#include "fdim/estimators.hpp"
#include "fdim/generators.hpp"
#include "fdim/geometry.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

namespace {

fractal::PointSet random_set(std::uint64_t seed, int n, std::size_t count, int precision = 20) {
    fractal::Prng rng(seed);
    std::vector<std::int64_t> flat;
    flat.reserve(count * static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < count * static_cast<std::size_t>(n); ++i)
        flat.push_back(
            static_cast<std::int64_t>(rng.next_u64() % (std::uint64_t{1} << precision)));
    return fractal::PointSet(n, precision, std::move(flat));
}

void bench_box_count(benchmark::State& state) {
    const fractal::PointSet koch6 = fractal::koch_snowflake(6, 26);
    const int r = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fractal::box_count(koch6, r));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(koch6.size()));
}
BENCHMARK(bench_box_count)->Arg(4)->Arg(8)->Arg(12);

void bench_box_dimension(benchmark::State& state) {
    const fractal::PointSet koch6 = fractal::koch_snowflake(6, 26);
    for (auto _ : state)
        benchmark::DoNotOptimize(fractal::box_dimension(koch6, 3, 8));
}
BENCHMARK(bench_box_dimension);

void bench_klen(benchmark::State& state) {
    const std::size_t bits = static_cast<std::size_t>(state.range(0));
    fractal::Prng rng(99);
    fractal::BitString input;
    for (std::size_t i = 0; i < bits; ++i) input.push_back(rng.next_u64() & 1);
    for (auto _ : state) benchmark::DoNotOptimize(fractal::klen(input));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(bits));
}
BENCHMARK(bench_klen)->Arg(1024)->Arg(4096)->Arg(16384);

void bench_proximal_intersection(benchmark::State& state) {
    const std::size_t count = static_cast<std::size_t>(state.range(0));
    const fractal::PointSet E = random_set(11, 2, count);
    const fractal::PointSet F = random_set(12, 2, count);
    for (auto _ : state)
        benchmark::DoNotOptimize(fractal::proximal_intersection(E, F, 0.01));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count));
}
BENCHMARK(bench_proximal_intersection)->Arg(1000)->Arg(10000);

void bench_attractor(benchmark::State& state) {
    const fractal::IteratedFunctionSystem ifs = fractal::koch_curve_ifs();
    const int depth = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(fractal::attractor(ifs, depth, 26, 1 << 22));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bench_attractor)->Arg(4)->Arg(6);

} // namespace

BENCHMARK_MAIN();
