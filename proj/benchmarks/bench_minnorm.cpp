#include <benchmark/benchmark.h>

#include "nibble/concentration.hpp"
#include "nibble/rng.hpp"

using namespace nibble;

namespace {

void bm_convex_distance(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto set_size = static_cast<std::size_t>(state.range(1));
    Rng rng(11);
    Outcome x(m, 0);
    std::vector<Outcome> a_set;
    for (std::size_t k = 0; k < set_size; ++k) {
        Outcome y(m);
        for (auto& yi : y) yi = static_cast<int>(rng.next_below(2));
        a_set.push_back(y);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(convex_distance(x, a_set));
    }
}
BENCHMARK(bm_convex_distance)->Args({8, 64})->Args({12, 256})->Args({16, 1024})->Args({20, 4096});

}  // namespace
