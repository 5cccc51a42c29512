#include <doctest.h>

#include <cmath>

#include "nibble/generators.hpp"
#include "nibble/wcp.hpp"
#include "test_support.hpp"

using namespace nibble;

namespace {

// measured max color-degree, used to pick a valid d bound
std::size_t measured_max_cd(const Graph& g, const ListAssignment& l) {
    std::size_t m = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (Color c : l.list(v)) m = std::max(m, color_degree(g, l, v, c));
    return m;
}

}  // namespace

TEST_CASE("keep_value closed form") {
    CHECK(keep_value(100, 50, 0.0) == 1.0);
    CHECK(keep_value(1, 1, 0.5) == 0.5);
    // frozen from a 40-digit evaluation of (1 - 0.1/50)^100
    CHECK(keep_value(100, 50, 0.1) == doctest::Approx(0.8185668046884278).epsilon(1e-12));
    CHECK_THROWS_AS(keep_value(10, 0.5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(keep_value(10, 10, 1.5), std::invalid_argument);
}

TEST_CASE("eq_value: cancellation, base case, frozen value") {
    RoundParams p = RoundParams::make(100, 50, 2, 0.1);
    CHECK(eq_value(p, 100) == 1.0);  // dvc = d cancels exactly
    CHECK(eq_value(p, 0) == doctest::Approx(p.keep).epsilon(1e-15));
    // keep * (0.998)^{-50} = (0.998)^{50}, frozen from high-precision evaluation
    CHECK(eq_value(p, 50) == doctest::Approx(0.9047468180040358).epsilon(1e-12));
    CHECK_THROWS_AS(eq_value(p, 101), std::invalid_argument);
}

TEST_CASE("RoundParams derives keep and uncolor") {
    RoundParams p = RoundParams::make(100, 50, 2, 0.1);
    CHECK(p.keep == keep_value(100, 50, 0.1));
    CHECK(p.uncolor == 1.0 - 0.1 * p.keep);
    CHECK(p.keep > 0);
    CHECK(p.keep <= 1);
}

TEST_CASE("eta = 0 round is the identity") {
    Graph g = fixture("c5");
    auto l = test::same_list_everywhere(5, {1, 2, 3});
    RoundParams p = RoundParams::make(2, 3, 2, 0.0);
    auto out = run_round(g, l, p, 42);
    CHECK(out.phi.domain_size() == 0);
    CHECK(out.g_next.edge_count() == g.edge_count());
    CHECK(out.trace.equalizer_fired.empty());  // eq == keep == 1
    for (Vertex v = 0; v < 5; ++v) CHECK(out.l_next.list(v) == l.list(v));
}

TEST_CASE("single edge: survival probability is keep = 1/2") {
    Graph edge(2, {{0, 1}});
    auto l = test::same_list_everywhere(2, {1});
    RoundParams p = RoundParams::make(1, 1, 2, 0.5);
    CHECK(p.keep == 0.5);

    // independent 4-outcome oracle: A_u, A_v in {0, 1} each with prob 1/2;
    // color 1 survives at u iff A_v != 1, and eq(u,1) = 1 so flips never fire
    double survival = 0;
    for (int au = 0; au < 2; ++au)
        for (int av = 0; av < 2; ++av) {
            const double prob = 0.25;
            if (av == 0) survival += prob;
        }
    CHECK(survival == 0.5);

    CHECK(exact_survival_probability(edge, l, p, 0, 1) == doctest::Approx(0.5).epsilon(1e-15));

    // and empirically: Pr(1 in L'(u)) over many seeds
    int kept = 0;
    const int trials = 4000;
    for (int t = 0; t < trials; ++t) {
        auto out = run_round(edge, l, p, 1000 + static_cast<std::uint64_t>(t));
        if (out.trace.list_sizes_after[0] == 1) ++kept;
    }
    const double freq = static_cast<double>(kept) / trials;
    CHECK(std::abs(freq - 0.5) < 3 * std::sqrt(0.25 / trials));
}

TEST_CASE("exact survival equals keep on enumerable instances") {
    for (std::uint64_t seed : {1ull, 7ull, 19ull}) {
        Graph g = test::random_graph(24, 0.25, seed);
        auto lists = uniform_lists(24, 14, 6, seed + 5);
        auto [pg, pl] = preprocess(g, lists, 6);
        const double d = std::max<double>(1.0, static_cast<double>(measured_max_cd(pg, pl)));
        RoundParams p = RoundParams::make(d, 6, 2, 0.2);
        for (Vertex v = 0; v < 24; ++v)
            for (Color c : pl.list(v)) {
                CHECK(exact_survival_probability(pg, pl, p, v, c) ==
                      doctest::Approx(p.keep).epsilon(1e-12));
            }
    }
    // empty color-neighborhood: survival = eq(v,c) = keep directly
    Graph lone(1, {});
    auto l1 = test::same_list_everywhere(1, {4});
    RoundParams p = RoundParams::make(3, 1, 2, 0.25);
    CHECK(exact_survival_probability(lone, l1, p, 0, 4) ==
          doctest::Approx(p.keep).epsilon(1e-15));
}

TEST_CASE("exact survival rejects oversized neighborhoods") {
    const std::size_t n = 24;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);  // star with 23 leaves
    Graph star(n, edges);
    auto l = test::same_list_everywhere(n, {1});
    RoundParams p = RoundParams::make(23, 1, 2, 0.1);
    CHECK_THROWS_AS(exact_survival_probability(star, l, p, 0, 1), std::length_error);
}

TEST_CASE("round output invariants on random pairs") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        Graph g = test::random_graph(40, 0.2, seed);
        auto lists = uniform_lists(40, 18, 8, seed + 50);
        auto [pg, pl] = preprocess(g, lists, 8);
        const double d = std::max<double>(1.0, static_cast<double>(measured_max_cd(pg, pl)));
        RoundParams p = RoundParams::make(d, 8, 2, 0.25);
        auto out = run_round(pg, pl, p, seed * 77);

        CHECK(is_proper(pg, out.phi));
        for (Vertex v : out.phi.domain()) CHECK(pl.contains(v, out.phi.color(v)));

        // L'(v) avoids every color a neighbor took permanently
        for (std::size_t j = 0; j < out.kept.size(); ++j) {
            const Vertex v = out.kept[j];
            for (Vertex u : pg.neighbors(v)) {
                if (!out.phi.has(u)) continue;
                CHECK_FALSE(out.l_next.contains(static_cast<Vertex>(j), out.phi.color(u)));
            }
        }

        // uncolored vertices = complement of dom(phi)
        CHECK(out.kept.size() + out.phi.domain_size() == pg.vertex_count());
    }
}

TEST_CASE("wastefulness witness exists on the C5 fixture") {
    Graph c5 = fixture("c5");
    auto l = test::same_list_everywhere(5, {1, 2, 3});
    // d = 3 > measured color-degree 2, so eq < 1 and flips genuinely fire
    RoundParams p = RoundParams::make(3, 3, 2, 0.3);
    bool witnessed = false;
    for (std::uint64_t seed = 1; seed <= 100 && !witnessed; ++seed) {
        auto out = run_round(c5, l, p, seed);
        for (std::size_t j = 0; j < out.kept.size() && !witnessed; ++j) {
            const Vertex v = out.kept[j];
            for (Color c : l.list(v)) {
                if (out.l_next.contains(static_cast<Vertex>(j), c)) continue;
                bool neighbor_has_c = false;
                for (Vertex u : c5.neighbors(v))
                    if (out.phi.has(u) && out.phi.color(u) == c) neighbor_has_c = true;
                if (!neighbor_has_c) {
                    witnessed = true;  // removed although no neighbor kept c
                    break;
                }
            }
        }
    }
    CHECK(witnessed);
}

TEST_CASE("round is deterministic in (inputs, seed)") {
    Graph g = test::random_graph(30, 0.25, 4);
    auto lists = uniform_lists(30, 15, 6, 9);
    auto [pg, pl] = preprocess(g, lists, 6);
    const double d = std::max<double>(1.0, static_cast<double>(measured_max_cd(pg, pl)));
    RoundParams p = RoundParams::make(d, 6, 2, 0.2);
    auto a = run_round(pg, pl, p, 1234);
    auto b = run_round(pg, pl, p, 1234);
    CHECK(a.trace.activation == b.trace.activation);
    CHECK(a.trace.equalizer_fired == b.trace.equalizer_fired);
    CHECK(a.kept == b.kept);
    CHECK(a.g_next.edges() == b.g_next.edges());
    for (Vertex v = 0; v < a.l_next.vertex_count(); ++v)
        CHECK(a.l_next.list(v) == b.l_next.list(v));
    auto c = run_round(pg, pl, p, 1235);
    CHECK(a.trace.activation != c.trace.activation);
}

TEST_CASE("mean |L'(v)| approaches ell * keep") {
    Graph g = test::random_graph(60, 0.12, 17);
    auto lists = uniform_lists(60, 30, 10, 18);
    auto [pg, pl] = preprocess(g, lists, 10);
    const double d = std::max<double>(1.0, static_cast<double>(measured_max_cd(pg, pl)));
    RoundParams p = RoundParams::make(d, 10, 2, 0.15);

    const int trials = 3000;
    for (Vertex probe : {Vertex{7}, Vertex{23}, Vertex{41}}) {
        double sum = 0, sumsq = 0;
        for (int t = 0; t < trials; ++t) {
            auto out = run_round(pg, pl, p, 50000 + static_cast<std::uint64_t>(t) * 3 + probe);
            const double size = out.trace.list_sizes_after[probe];
            sum += size;
            sumsq += size * size;
        }
        const double mean = sum / trials;
        const double var = sumsq / trials - mean * mean;
        const double se = std::sqrt(std::max(var, 1e-9) / trials);
        CHECK(std::abs(mean - 10.0 * p.keep) <= 3 * se);
    }
}
