#include "nibble/sparsify.hpp"

#include <algorithm>
#include <stdexcept>

#include "nibble/generators.hpp"
#include "nibble/rng.hpp"

namespace nibble {

SparsifyResult sparsify_and_color(const Graph& g, int q, int ell, std::uint64_t seed,
                                  const PipelineOptions& opts) {
    if (ell > q) throw std::invalid_argument("ell must not exceed q");
    SparsifyResult res;
    const std::size_t n = g.vertex_count();
    res.lists = uniform_lists(n, q, ell, derive_seed(seed, 0x5A11));

    std::vector<std::pair<Vertex, Vertex>> conflict_edges;
    for (const auto& [u, v] : g.edges()) {
        const auto& lu = res.lists.list(u);
        const auto& lv = res.lists.list(v);
        std::size_t i = 0, j = 0;
        while (i < lu.size() && j < lv.size()) {
            if (lu[i] == lv[j]) {
                conflict_edges.emplace_back(u, v);
                break;
            }
            if (lu[i] < lv[j]) ++i; else ++j;
        }
    }
    res.e_prime = conflict_edges.size();
    Graph conflict_graph(n, conflict_edges);

    PipelineResult colored = color_with_pipeline(conflict_graph, res.lists, opts,
                                                 derive_seed(seed, 0xC010));
    if (!colored.ok) {
        res.reason = colored.message.empty() ? "pipeline failed" : colored.message;
        return res;
    }
    res.phi = std::move(colored.phi);
    res.colors_used = colored.colors_used;

    // a conflict outside E' is impossible by construction; asserted anyway
    if (!is_proper(g, res.lists, res.phi)) {
        res.reason = "coloring of the conflict graph is improper on the full graph";
        return res;
    }
    res.success = true;
    return res;
}

}  // namespace nibble
