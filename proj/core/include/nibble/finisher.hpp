#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nibble/graph.hpp"

namespace nibble {

struct FinishResult {
    enum class Status { completed, exhausted, infeasible };
    Status status = Status::completed;
    PartialColoring phi;  // total on success
    std::size_t sweeps = 0;
    std::vector<std::size_t> uncolored_per_sweep;  // progress trace
    std::vector<Vertex> uncolored;                 // non-empty unless completed
    std::string message;
    bool ok() const { return status == Status::completed; }
};

/// Complete a coloring when lists dominate color-degrees: every uncolored
/// vertex independently picks a uniform list color, conflicted picks are
/// dropped, repeat; a sequential greedy pass takes over once max_iterations
/// sweeps pass without progress. Entry requires min|L| >= 8*max color-degree
/// or |L(v)| > deg(v) for every vertex.
FinishResult complete_coloring(const Graph& g, const ListAssignment& l, std::uint64_t seed,
                               std::size_t max_iterations = 64);

}  // namespace nibble
