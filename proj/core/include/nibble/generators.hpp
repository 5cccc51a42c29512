#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nibble/graph.hpp"

namespace nibble {

struct GenSpec {
    enum class Family { gnp, bipartite_random, blowup_cycle, kst_free_sample, fixture };

    Family family = Family::gnp;
    std::size_t n = 0;
    double target_degree = 0.0;
    double codegree_cap = -1.0;  // < 0 means unbounded
    int s = 2;
    std::uint64_t seed = 0;
    std::string fixture_name;  // for Family::fixture

    static Family family_from_string(const std::string& name);
    static std::string family_to_string(Family f);
};

struct GenResult {
    Graph graph;
    std::vector<std::string> warnings;
};

/// Deterministic given the spec's seed. For random families, edges are
/// sampled independently and then greedily deleted (lexicographic order)
/// until the maximum s-codegree respects codegree_cap.
GenResult generate(const GenSpec& spec);

/// Named small fixtures: "c5", "petersen", "k13", "rook33".
Graph fixture(const std::string& name);
std::vector<std::string> fixture_names();

/// Each list an independent uniform ell-subset of {1..q}.
ListAssignment uniform_lists(std::size_t n, int q, int ell, std::uint64_t seed);

}  // namespace nibble
