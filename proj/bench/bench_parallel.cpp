// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "fmtk/equiv.hpp"
#include "fmtk/formula.hpp"
#include "fmtk/generators.hpp"
#include "fmtk/translate.hpp"

using namespace fmtk;

namespace {

Structure random_graph(int n, double density, unsigned seed) {
    std::mt19937 rng(seed);
    std::bernoulli_distribution edge(density);
    StructureBuilder b(graph_vocabulary(), n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (edge(rng)) b.add("E", {i, j});
    return b.build();
}

void rank_type_bench(benchmark::State& state, Execution exec) {
    const Structure g = random_graph(static_cast<int>(state.range(0)), 0.3, 7);
    const int m = static_cast<int>(state.range(1));
    for (auto _ : state) {
        EquivSession session;  // fresh cache: measure the full computation
        benchmark::DoNotOptimize(session.rank_type(g, {}, m, exec).id());
    }
}

void cores_bench(benchmark::State& state, Execution exec) {
    const Structure g = random_graph(static_cast<int>(state.range(0)), 0.4, 11);
    const Formula phi = parse("forall x. exists y. E(x, y) | E(y, x)");
    const Membership all = class_membership("all");
    for (auto _ : state) benchmark::DoNotOptimize(find_cores(g, phi, 2, all, exec).size());
}

}  // namespace

BENCHMARK_CAPTURE(rank_type_bench, serial, Execution::Serial)
    ->Args({10, 2})->Args({8, 3})->Args({14, 2})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(rank_type_bench, parallel, Execution::Parallel)
    ->Args({10, 2})->Args({8, 3})->Args({14, 2})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(cores_bench, serial, Execution::Serial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(cores_bench, parallel, Execution::Parallel)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
