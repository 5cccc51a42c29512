#include <benchmark/benchmark.h>

#include "nibble/generators.hpp"
#include "nibble/partition.hpp"

using namespace nibble;

namespace {

void bm_random_bipartition(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    GenSpec spec;
    spec.family = GenSpec::Family::gnp;
    spec.n = n;
    spec.target_degree = 25;
    spec.seed = 7;
    Graph g = generate(spec).graph;
    const double d = static_cast<double>(g.max_degree());
    const double t = static_cast<double>(std::max<std::size_t>(max_graph_s_codegree(g, 2), 1));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto split = random_bipartition(g, 2, d, t, ++seed, 100);
        if (!split.ok) state.SkipWithError("bipartition failed");
        benchmark::DoNotOptimize(split);
    }
}
BENCHMARK(bm_random_bipartition)->Range(128, 1024)->Unit(benchmark::kMillisecond);

}  // namespace
