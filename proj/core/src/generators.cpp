#include "nibble/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "nibble/rng.hpp"

namespace nibble {

namespace {

std::vector<std::pair<Vertex, Vertex>> sample_gnp_edges(std::size_t n, double p, Rng& rng) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u + 1 < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.emplace_back(u, v);
    return edges;
}

// Greedy cap enforcement. While some s-tuple has too many common neighbors,
// delete the lexicographically smallest edge between the tuple and its
// common neighborhood, scanning tuples in lexicographic order.
std::vector<std::pair<Vertex, Vertex>> enforce_codegree_cap(
    std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges, int s, double cap) {
    if (cap < 0) return edges;
    std::sort(edges.begin(), edges.end());
    for (;;) {
        Graph g(n, edges);
        std::pair<Vertex, Vertex> victim{0, 0};
        bool found = false;
        auto tuples = tuples_with_common_neighbor(g, s);
        std::sort(tuples.begin(), tuples.end());
        for (const auto& tuple : tuples) {
            const auto cn = common_neighbors(g, tuple);
            if (static_cast<double>(cn.size()) <= cap) continue;
            for (Vertex t : tuple)
                for (Vertex u : cn) {
                    auto e = std::minmax(t, u);
                    std::pair<Vertex, Vertex> cand{e.first, e.second};
                    if (!found || cand < victim) {
                        victim = cand;
                        found = true;
                    }
                }
            break;  // repair the first violating tuple, then rescan
        }
        if (!found) return edges;
        edges.erase(std::remove(edges.begin(), edges.end(), victim), edges.end());
    }
}

Graph blowup_cycle(std::size_t n, double target_degree) {
    // Blow up a cycle C_k: vertex i sits in group i / b and is adjacent to
    // everything in the two neighboring groups, giving degree about 2b.
    const std::size_t b = std::max<std::size_t>(1, static_cast<std::size_t>(target_degree / 2.0));
    const std::size_t k = std::max<std::size_t>(3, (n + b - 1) / b);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u) {
        const std::size_t gu = u / b;
        for (Vertex v = u + 1; v < n; ++v) {
            const std::size_t gv = v / b;
            const std::size_t diff = (gv - gu + k) % k;
            if (diff == 1 || diff == k - 1) edges.emplace_back(u, v);
        }
    }
    return Graph(n, edges);
}

}  // namespace

GenSpec::Family GenSpec::family_from_string(const std::string& name) {
    if (name == "gnp") return Family::gnp;
    if (name == "bipartite_random") return Family::bipartite_random;
    if (name == "blowup_cycle") return Family::blowup_cycle;
    if (name == "kst_free_sample") return Family::kst_free_sample;
    if (name == "fixture") return Family::fixture;
    throw std::invalid_argument("unknown generator family '" + name + "'");
}

std::string GenSpec::family_to_string(Family f) {
    switch (f) {
        case Family::gnp: return "gnp";
        case Family::bipartite_random: return "bipartite_random";
        case Family::blowup_cycle: return "blowup_cycle";
        case Family::kst_free_sample: return "kst_free_sample";
        case Family::fixture: return "fixture";
    }
    return "?";
}

GenResult generate(const GenSpec& spec) {
    if (spec.family != GenSpec::Family::fixture && spec.n < 1)
        throw std::invalid_argument("generator spec requires n >= 1");
    GenResult result;
    Rng rng(spec.seed);

    switch (spec.family) {
        case GenSpec::Family::fixture: {
            result.graph = fixture(spec.fixture_name);
            return result;
        }
        case GenSpec::Family::gnp: {
            const double p =
                spec.n > 1 ? std::min(1.0, spec.target_degree / static_cast<double>(spec.n - 1))
                           : 0.0;
            auto edges = sample_gnp_edges(spec.n, p, rng);
            edges = enforce_codegree_cap(spec.n, std::move(edges), spec.s, spec.codegree_cap);
            result.graph = Graph(spec.n, edges);
            break;
        }
        case GenSpec::Family::bipartite_random: {
            const std::size_t half = spec.n / 2;
            const double p = half > 0
                                 ? std::min(1.0, spec.target_degree / static_cast<double>(half))
                                 : 0.0;
            std::vector<std::pair<Vertex, Vertex>> edges;
            for (Vertex u = 0; u < half; ++u)
                for (Vertex v = static_cast<Vertex>(half); v < spec.n; ++v)
                    if (rng.bernoulli(p)) edges.emplace_back(u, v);
            edges = enforce_codegree_cap(spec.n, std::move(edges), spec.s, spec.codegree_cap);
            result.graph = Graph(spec.n, edges);
            break;
        }
        case GenSpec::Family::blowup_cycle: {
            result.graph = blowup_cycle(spec.n, spec.target_degree);
            if (spec.codegree_cap >= 0) {
                auto edges = enforce_codegree_cap(spec.n, result.graph.edges(), spec.s,
                                                  spec.codegree_cap);
                result.graph = Graph(spec.n, edges);
            }
            break;
        }
        case GenSpec::Family::kst_free_sample: {
            // Insert gnp-sampled edges in random order, keeping each only if
            // the s-codegree cap still holds afterwards.
            const double p =
                spec.n > 1 ? std::min(1.0, spec.target_degree / static_cast<double>(spec.n - 1))
                           : 0.0;
            auto candidates = sample_gnp_edges(spec.n, p, rng);
            for (std::size_t i = candidates.size(); i > 1; --i)
                std::swap(candidates[i - 1], candidates[rng.next_below(i)]);
            std::vector<std::pair<Vertex, Vertex>> accepted;
            for (const auto& e : candidates) {
                accepted.push_back(e);
                if (spec.codegree_cap >= 0) {
                    Graph g(spec.n, accepted);
                    bool ok = true;
                    // only tuples inside the new edge's neighborhoods can change
                    for (const auto& tuple : tuples_with_common_neighbor(g, spec.s)) {
                        if (static_cast<double>(common_neighbors(g, tuple).size()) >
                            spec.codegree_cap) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) accepted.pop_back();
                }
            }
            result.graph = Graph(spec.n, accepted);
            break;
        }
    }

    if (spec.target_degree > 0 && result.graph.max_degree() == 0)
        result.warnings.push_back(
            "codegree cap forced an edgeless graph although target_degree > 0");
    return result;
}

Graph fixture(const std::string& name) {
    if (name == "c5") {
        return Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    }
    if (name == "petersen") {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex i = 0; i < 5; ++i) {
            edges.emplace_back(i, (i + 1) % 5);            // outer cycle
            edges.emplace_back(i, i + 5);                  // spokes
            edges.emplace_back(i + 5, (i + 2) % 5 + 5);    // inner pentagram
        }
        return Graph(10, edges);
    }
    if (name == "k13") {
        return Graph(4, {{0, 1}, {0, 2}, {0, 3}});  // center 0
    }
    if (name == "rook33") {
        std::vector<std::pair<Vertex, Vertex>> edges;
        auto id = [](int r, int c) { return static_cast<Vertex>(3 * r + c); };
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                for (int c2 = c + 1; c2 < 3; ++c2) edges.emplace_back(id(r, c), id(r, c2));
                for (int r2 = r + 1; r2 < 3; ++r2) edges.emplace_back(id(r, c), id(r2, c));
            }
        return Graph(9, edges);
    }
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() { return {"c5", "petersen", "k13", "rook33"}; }

ListAssignment uniform_lists(std::size_t n, int q, int ell, std::uint64_t seed) {
    if (ell > q) throw std::invalid_argument("list size ell exceeds palette size q");
    if (ell < 0 || q < 0) throw std::invalid_argument("q and ell must be nonnegative");
    Rng rng(seed);
    std::vector<std::vector<Color>> lists(n);
    for (std::size_t v = 0; v < n; ++v) {
        // Floyd's subset sampling: uniform ell-subset of {1..q}
        std::set<Color> chosen;
        for (int j = q - ell + 1; j <= q; ++j) {
            const Color t = static_cast<Color>(1 + rng.next_below(static_cast<std::uint64_t>(j)));
            if (!chosen.insert(t).second) chosen.insert(j);
        }
        lists[v].assign(chosen.begin(), chosen.end());
    }
    return ListAssignment(std::move(lists));
}

}  // namespace nibble
