#pragma once

#include <cstdint>
#include <string>

#include "nibble/graph.hpp"
#include "nibble/pipeline.hpp"

namespace nibble {

struct SparsifyResult {
    std::size_t e_prime = 0;  // |E'| = edges whose sampled lists intersect
    bool success = false;
    PartialColoring phi;
    ListAssignment lists;
    std::size_t colors_used = 0;
    std::string reason;
};

/// Sample uniform ell-subsets of [q] per vertex, keep only the edges whose
/// lists intersect, and color that conflict graph with the pipeline. On
/// success the coloring is additionally verified against the full graph.
SparsifyResult sparsify_and_color(const Graph& g, int q, int ell, std::uint64_t seed,
                                  const PipelineOptions& opts = {});

}  // namespace nibble
