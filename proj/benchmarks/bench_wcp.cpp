#include <benchmark/benchmark.h>

#include "nibble/generators.hpp"
#include "nibble/pipeline.hpp"
#include "nibble/wcp.hpp"

using namespace nibble;

namespace {

void bm_run_round(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    GenSpec spec;
    spec.family = GenSpec::Family::gnp;
    spec.n = n;
    spec.target_degree = 40;
    spec.seed = 3;
    Graph g = generate(spec).graph;
    auto lists = uniform_lists(n, 300, 100, 4);
    auto [pg, pl] = preprocess(g, lists, 100);
    std::size_t max_cd = 0;
    for (const auto& row : color_degree_table(pg, pl))
        for (auto c : row) max_cd = std::max<std::size_t>(max_cd, c);
    RoundParams p = RoundParams::make(static_cast<double>(std::max<std::size_t>(max_cd, 2)),
                                      100, 2, 0.1);
    const auto ctx = make_round_context(pg, pl, p);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto out = run_round(pg, pl, p, ++seed, PairCheck::skip, ctx);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(bm_run_round)->Range(256, 2048);

void bm_full_pipeline(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    GenSpec spec;
    spec.family = GenSpec::Family::gnp;
    spec.n = n;
    spec.target_degree = 30;
    spec.seed = 5;
    Graph g = generate(spec).graph;
    const int ell = static_cast<int>(2 * g.max_degree());
    auto lists = uniform_lists(n, 3 * ell, ell, 6);
    PipelineOptions opts;
    opts.eta_override = 0.1;
    opts.codegree_exponent = 1.0;
    opts.error_exponent = 1.7;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto res = color_with_pipeline(g, lists, opts, ++seed);
        if (!res.ok) state.SkipWithError("pipeline failed");
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(bm_full_pipeline)->Range(256, 2048)->Unit(benchmark::kMillisecond);

}  // namespace
