#include <benchmark/benchmark.h>

#include "nibble/generators.hpp"
#include "nibble/graph.hpp"

using namespace nibble;

namespace {

Graph make_graph(std::size_t n, double degree) {
    GenSpec spec;
    spec.family = GenSpec::Family::gnp;
    spec.n = n;
    spec.target_degree = degree;
    spec.seed = 1;
    return generate(spec).graph;
}

void bm_color_degree_table(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Graph g = make_graph(n, 30);
    auto lists = uniform_lists(n, 120, 40, 2);
    for (auto _ : state) {
        auto table = color_degree_table(g, lists);
        benchmark::DoNotOptimize(table);
    }
    state.SetComplexityN(static_cast<long>(n));
}
BENCHMARK(bm_color_degree_table)->Range(256, 4096)->Complexity();

void bm_max_metrics(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Graph g = make_graph(n, 30);
    auto lists = uniform_lists(n, 120, 40, 2);
    for (auto _ : state) {
        auto m = max_metrics(g, lists, 2);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(bm_max_metrics)->Range(256, 2048);

void bm_tuples_by_codegree(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Graph g = make_graph(n, 30);
    for (auto _ : state) {
        auto tuples = tuples_by_codegree(g, 2);
        benchmark::DoNotOptimize(tuples);
    }
}
BENCHMARK(bm_tuples_by_codegree)->Range(256, 4096);

}  // namespace

BENCHMARK_MAIN();
