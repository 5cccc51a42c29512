#include "nibble/finisher.hpp"

#include <algorithm>

#include "nibble/rng.hpp"

namespace nibble {

FinishResult complete_coloring(const Graph& g, const ListAssignment& l, std::uint64_t seed,
                               std::size_t max_iterations) {
    const std::size_t n = g.vertex_count();
    FinishResult res;
    res.phi = PartialColoring(n);
    if (n == 0) return res;

    std::size_t max_cd = 0;
    for (const auto& row : color_degree_table(g, l))
        for (std::uint32_t c : row) max_cd = std::max<std::size_t>(max_cd, c);

    const bool margin_ok = l.min_list_size() >= 8 * std::max<std::size_t>(max_cd, 1);
    bool greedy_ok = true;
    for (Vertex v = 0; v < n; ++v)
        if (l.list(v).size() <= g.degree(v)) {
            greedy_ok = false;
            break;
        }
    if (!margin_ok && !greedy_ok) {
        res.status = FinishResult::Status::infeasible;
        res.message = "neither min|L| >= 8*max color-degree nor |L(v)| > deg(v) holds";
        for (Vertex v = 0; v < n; ++v) res.uncolored.push_back(v);
        return res;
    }

    Rng rng(seed);
    std::vector<Color> pick(n, 0);
    std::size_t no_progress = 0;

    while (res.phi.domain_size() < n && no_progress < max_iterations) {
        ++res.sweeps;
        for (Vertex v = 0; v < n; ++v) {
            if (res.phi.has(v)) {
                pick[v] = res.phi.color(v);
            } else {
                const auto& lv = l.list(v);
                pick[v] = lv[rng.next_below(lv.size())];
            }
        }
        std::size_t colored_before = res.phi.domain_size();
        for (Vertex v = 0; v < n; ++v) {
            if (res.phi.has(v)) continue;
            bool conflicted = false;
            for (Vertex u : g.neighbors(v)) {
                if (pick[u] == pick[v]) {
                    conflicted = true;
                    break;
                }
            }
            if (!conflicted) res.phi.set(v, pick[v]);
        }
        no_progress = res.phi.domain_size() > colored_before ? 0 : no_progress + 1;
        res.uncolored_per_sweep.push_back(n - res.phi.domain_size());
    }

    if (res.phi.domain_size() < n) {
        // sequential greedy on whatever the sweeps left behind
        for (Vertex v = 0; v < n; ++v) {
            if (res.phi.has(v)) continue;
            Color chosen = 0;
            for (Color c : l.list(v)) {
                bool used = false;
                for (Vertex u : g.neighbors(v))
                    if (res.phi.has(u) && res.phi.color(u) == c) {
                        used = true;
                        break;
                    }
                if (!used) {
                    chosen = c;
                    break;
                }
            }
            if (chosen != 0) res.phi.set(v, chosen);
        }
    }

    if (res.phi.domain_size() < n) {
        res.status = FinishResult::Status::exhausted;
        for (Vertex v = 0; v < n; ++v)
            if (!res.phi.has(v)) res.uncolored.push_back(v);
        res.message = std::to_string(res.uncolored.size()) + " vertices left uncolored after " +
                      std::to_string(res.sweeps) + " sweeps and a greedy pass";
    }
    return res;
}

}  // namespace nibble
