#include <doctest.h>

#include <sstream>

#include "nibble/generators.hpp"
#include "nibble/graph.hpp"
#include "nibble/io.hpp"
#include "test_support.hpp"

using namespace nibble;

TEST_CASE("graph construction enforces simplicity") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 5}}), std::invalid_argument);
    Graph g(4, {{2, 0}, {0, 1}});
    CHECK(g.edge_count() == 2);
    CHECK(g.neighbors(0) == std::vector<Vertex>{1, 2});  // sorted
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(1, 2));
}

TEST_CASE("color_degree matches the definition") {
    // star K_{1,3}, all lists {1}, center 0
    Graph star = fixture("k13");
    auto lists = test::same_list_everywhere(4, {1});
    CHECK(color_degree(star, lists, 0, 1) == 3);
    CHECK(color_degree(star, lists, 0, 7) == 0);  // color absent from all lists

    // 5-cycle with lists {1,2} everywhere
    Graph c5 = fixture("c5");
    auto l2 = test::same_list_everywhere(5, {1, 2});
    CHECK(color_degree(c5, l2, 0, 2) == test::oracle_color_degree(c5, l2, 0, 2));
    CHECK(color_degree(c5, l2, 0, 2) == 2);

    CHECK_THROWS_AS(color_degree(c5, l2, 17, 1), std::invalid_argument);
}

TEST_CASE("s_color_codegree on K_{2,3} and random graphs") {
    // parts {0,1} and {2,3,4}, all lists {1}
    Graph k23(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
    auto lists = test::same_list_everywhere(5, {1});
    std::vector<Vertex> ab{0, 1};
    CHECK(s_color_codegree(k23, lists, ab, 1) == 3);

    std::vector<Vertex> disjoint{2, 3};  // no common neighbor carries color 9
    CHECK(s_color_codegree(k23, lists, disjoint, 9) == 0);

    std::vector<Vertex> repeated{0, 0};
    CHECK_THROWS_AS(s_color_codegree(k23, lists, repeated, 1), std::invalid_argument);

    Graph g = test::random_graph(8, 0.5, 42);
    auto rl = uniform_lists(8, 6, 3, 7);
    for (Vertex u = 0; u < 8; ++u)
        for (Vertex v = u + 1; v < 8; ++v)
            for (Color c = 1; c <= 6; ++c) {
                std::vector<Vertex> t{u, v};
                CHECK(s_color_codegree(g, rl, t, c) == test::oracle_s_codegree(g, rl, t, c));
            }
}

TEST_CASE("codegree is symmetric under tuple permutation") {
    Graph g = test::random_graph(10, 0.4, 5);
    auto l = uniform_lists(10, 8, 4, 11);
    for (Vertex u = 0; u < 10; ++u)
        for (Vertex v = u + 1; v < 10; ++v) {
            std::vector<Vertex> a{u, v}, b{v, u};
            for (Color c = 1; c <= 8; ++c)
                CHECK(s_color_codegree(g, l, a, c) == s_color_codegree(g, l, b, c));
        }
}

TEST_CASE("max_metrics: trivial and exhaustive cases") {
    Graph empty(4, {});
    auto le = uniform_lists(4, 5, 2, 1);
    auto m = max_metrics(empty, le, 2);
    CHECK(m.max_color_degree == 0);
    CHECK(m.max_s_codegree == 0);
    CHECK(m.min_list_size == 2);

    Graph star = fixture("k13");
    auto l1 = test::same_list_everywhere(4, {1});
    auto ms = max_metrics(star, l1, 2);
    CHECK(ms.max_color_degree == 3);
    CHECK(ms.max_s_codegree == 1);  // leaf pairs share only the center
    CHECK(ms.min_list_size == 1);

    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        Graph g = test::random_graph(10, 0.45, seed);
        auto l = uniform_lists(10, 7, 3, seed + 100);
        auto got = max_metrics(g, l, 2);
        auto want = test::oracle_max_metrics(g, l, 2);
        CHECK(got.max_color_degree == want.max_color_degree);
        CHECK(got.max_s_codegree == want.max_s_codegree);
        CHECK(got.min_list_size == want.min_list);
    }
    // s = 3 as well
    Graph g = test::random_graph(9, 0.55, 77);
    auto l = uniform_lists(9, 6, 3, 78);
    auto got = max_metrics(g, l, 3);
    auto want = test::oracle_max_metrics(g, l, 3);
    CHECK(got.max_s_codegree == want.max_s_codegree);
}

TEST_CASE("max_metrics matches the exhaustive oracle on every fixture") {
    for (const auto& name : fixture_names()) {
        Graph g = fixture(name);
        for (std::uint64_t lseed : {1ull, 2ull}) {
            auto l = uniform_lists(g.vertex_count(), 6, 3, lseed);
            for (int s = 2; s <= 3; ++s) {
                auto got = max_metrics(g, l, s);
                auto want = test::oracle_max_metrics(g, l, s);
                CHECK(got.max_color_degree == want.max_color_degree);
                CHECK(got.max_s_codegree == want.max_s_codegree);
                CHECK(got.min_list_size == want.min_list);
            }
        }
    }
}

TEST_CASE("preprocess trims lexicographically and prunes disjoint edges") {
    Graph edge(2, {{0, 1}});
    ListAssignment l({{3, 1, 2}, {1, 2, 9}});
    auto [g2, l2] = preprocess(edge, l, 2);
    CHECK(l2.list(0) == std::vector<Color>{1, 2});
    CHECK(g2.edge_count() == 1);

    ListAssignment disj({{1}, {2}});
    auto [g3, l3] = preprocess(edge, disj, 1);
    CHECK(g3.edge_count() == 0);  // disjoint lists: edge removed

    // 4-cycle with alternating disjoint lists empties the edge set
    Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    ListAssignment alt({{1, 2}, {3, 4}, {1, 2}, {3, 4}});
    auto [g4, l4] = preprocess(c4, alt, 2);
    CHECK(g4.edge_count() == 0);

    ListAssignment small({{1}, {1, 2}});
    CHECK_THROWS_WITH_AS(preprocess(edge, small, 2),
                         doctest::Contains("vertex 0"), std::invalid_argument);
}

TEST_CASE("preprocess is idempotent and establishes its contract") {
    for (std::uint64_t seed : {3ull, 9ull, 27ull}) {
        Graph g = test::random_graph(12, 0.4, seed);
        auto l = uniform_lists(12, 9, 5, seed);
        auto [g1, l1] = preprocess(g, l, 4);
        auto [g2, l2] = preprocess(g1, l1, 4);
        CHECK(g1.edges() == g2.edges());
        for (Vertex v = 0; v < 12; ++v) {
            CHECK(l1.list(v) == l2.list(v));
            CHECK(l1.list(v).size() == 4);
        }
        // every surviving edge has intersecting lists
        for (const auto& [u, v] : g1.edges()) {
            bool inter = false;
            for (Color c : l1.list(u))
                if (l1.contains(v, c)) inter = true;
            CHECK(inter);
        }
    }
}

TEST_CASE("color_degree never exceeds the degree") {
    Graph g = test::random_graph(14, 0.5, 123);
    auto l = uniform_lists(14, 10, 4, 124);
    for (Vertex v = 0; v < 14; ++v)
        for (Color c = 1; c <= 10; ++c) CHECK(color_degree(g, l, v, c) <= g.degree(v));
}

TEST_CASE("validate_pair reports each violated bullet") {
    // a comfortable synthetic pair: sparse graph, large shared palette
    Graph g = test::random_graph(30, 0.15, 9);
    auto l = uniform_lists(30, 40, 20, 10);
    auto [pg, pl] = preprocess(g, l, 20);
    std::size_t max_cd = 0;
    for (Vertex v = 0; v < pg.vertex_count(); ++v)
        for (Color c : pl.list(v)) max_cd = std::max(max_cd, color_degree(pg, pl, v, c));
    const double d = std::max<double>(3.0, static_cast<double>(max_cd));
    PairParams p = PairParams::make(d, 20, 2, 0.05);
    p.codegree_exponent = 0.0;  // d / log^0 d = d: non-vacuous at this scale
    auto rep = validate_pair(pg, pl, p, /*strict=*/false);
    CHECK(rep.valid());

    // boundary: ell = 8d exactly must be flagged
    PairParams pb = PairParams::make(20.0 / 8.0, 20, 2, 0.05);
    pb.codegree_exponent = 0.0;
    auto repb = validate_pair(pg, pl, pb, false);
    bool found = false;
    for (const auto& v : repb.violations)
        if (v.find("ell < 8d") != std::string::npos) found = true;
    CHECK(found);

    // an edge with disjoint lists is named
    Graph edge(2, {{0, 1}});
    ListAssignment disj({{1, 2}, {3, 4}});
    PairParams pe = PairParams::make(4, 2, 2, 0.05);
    auto repe = validate_pair(edge, disj, pe, false);
    found = false;
    for (const auto& v : repe.violations)
        if (v.find("disjoint lists") != std::string::npos) found = true;
    CHECK(found);

    // non-strict: eta window and codegree-exponent demote to warnings
    PairParams pw = PairParams::make(4, 2, 2, 0.9);
    auto repw = validate_pair(edge, ListAssignment({{1, 2}, {2, 3}}), pw, false);
    bool warned = false;
    for (const auto& w : repw.warnings)
        if (w.find("eta window") != std::string::npos) warned = true;
    CHECK(warned);
    auto reps = validate_pair(edge, ListAssignment({{1, 2}, {2, 3}}), pw, true);
    bool hard = false;
    for (const auto& v : reps.violations)
        if (v.find("eta window") != std::string::npos) hard = true;
    CHECK(hard);
}

TEST_CASE("is_proper") {
    Graph edge(2, {{0, 1}});
    PartialColoring phi(2);
    CHECK(is_proper(edge, phi));  // empty coloring
    phi.set(0, 1);
    phi.set(1, 1);
    CHECK_FALSE(is_proper(edge, phi));
    auto bad = conflicting_edges(edge, phi);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == std::pair<Vertex, Vertex>{0, 1});
    phi.set(1, 2);
    CHECK(is_proper(edge, phi));
    ListAssignment l({{1}, {1}});
    CHECK_FALSE(is_proper(edge, l, phi));  // 2 is not on vertex 1's list
}

TEST_CASE("edge list and lists JSON round-trip byte-identically") {
    Graph g = test::random_graph(20, 0.3, 321);
    std::ostringstream first;
    write_edge_list(first, g);
    std::istringstream back(first.str());
    Graph g2 = read_edge_list(back);
    std::ostringstream second;
    write_edge_list(second, g2);
    CHECK(first.str() == second.str());

    auto l = uniform_lists(20, 12, 5, 322);
    std::ostringstream lj;
    write_lists_json(lj, l);
    std::istringstream lback(lj.str());
    auto l2 = read_lists_json(lback);
    std::ostringstream lj2;
    write_lists_json(lj2, l2);
    CHECK(lj.str() == lj2.str());

    PartialColoring phi(20);
    phi.set(3, 4);
    phi.set(11, 1);
    std::ostringstream cj;
    write_coloring_json(cj, phi);
    std::istringstream cback(cj.str());
    auto phi2 = read_coloring_json(cback);
    std::ostringstream cj2;
    write_coloring_json(cj2, phi2);
    CHECK(cj.str() == cj2.str());
}

TEST_CASE("io reports malformed input with line diagnostics") {
    std::istringstream missing("3 2\n0 1\n");
    CHECK_THROWS_AS(read_edge_list(missing), IoError);
    std::istringstream garbage("3 1\n0 x\n");
    CHECK_THROWS_WITH_AS(read_edge_list(garbage), doctest::Contains("line 2"), IoError);
    std::istringstream notjson("{\"lists\": 3}");
    CHECK_THROWS_AS(read_lists_json(notjson), IoError);
}
