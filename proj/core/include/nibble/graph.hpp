#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nibble {

using Vertex = std::uint32_t;
using Color = std::int32_t;  // colors are strictly positive; 0 means "not activated / unset"

/// Immutable simple graph with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges);

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    const std::vector<Vertex>& neighbors(Vertex v) const;
    std::size_t degree(Vertex v) const { return neighbors(v).size(); }
    bool has_edge(Vertex u, Vertex v) const;
    std::size_t max_degree() const;

    /// All edges as (u,v) with u < v, lexicographic.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    /// Induced subgraph on `keep` (need not be sorted); vertices are
    /// renumbered 0..keep.size()-1 in the order of sorted(keep).
    /// original_ids, when given, receives new-id -> old-id.
    Graph induced(const std::vector<Vertex>& keep, std::vector<Vertex>* original_ids = nullptr) const;

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t edge_count_ = 0;
};

/// Per-vertex sorted, duplicate-free lists of positive color ids.
class ListAssignment {
public:
    ListAssignment() = default;
    explicit ListAssignment(std::vector<std::vector<Color>> lists);

    std::size_t vertex_count() const { return lists_.size(); }
    const std::vector<Color>& list(Vertex v) const;
    bool contains(Vertex v, Color c) const;
    std::size_t min_list_size() const;
    std::size_t max_list_size() const;

    ListAssignment restricted_to(const std::vector<Vertex>& keep) const;

private:
    std::vector<std::vector<Color>> lists_;
};

/// Partial map vertex -> color with explicit domain. Color 0 = unassigned.
class PartialColoring {
public:
    PartialColoring() = default;
    explicit PartialColoring(std::size_t n) : assign_(n, 0) {}

    std::size_t vertex_count() const { return assign_.size(); }
    bool has(Vertex v) const { return assign_.at(v) != 0; }
    Color color(Vertex v) const { return assign_.at(v); }
    void set(Vertex v, Color c);
    void unset(Vertex v);
    std::size_t domain_size() const { return assigned_; }
    std::vector<Vertex> domain() const;

private:
    std::vector<Color> assign_;
    std::size_t assigned_ = 0;
};

/// Parameters of a (d, ell, s, eta)-graph-list pair.
struct PairParams {
    double d = 0;                  // color-degree bound
    int ell = 0;                   // uniform list size
    int s = 2;                     // codegree arity >= 2
    double eta = 0;                // activation probability in (0,1)
    double codegree_exponent = 0;  // defaults to 16*s

    static PairParams make(double d, int ell, int s, double eta);
    /// d / log^codegree_exponent(d); 0 when it would be negative or NaN.
    double codegree_bound() const;
};

// ---- operations -----------------------------------------------------------

/// |{u in N(v) : c in L(u)}|
std::size_t color_degree(const Graph& g, const ListAssignment& l, Vertex v, Color c);

/// |{u : u in N(v_i) for all i, c in L(u)}|; vertices must be distinct.
std::size_t s_color_codegree(const Graph& g, const ListAssignment& l,
                             std::span<const Vertex> vs, Color c);

/// Sorted common neighborhood of a distinct vertex tuple.
std::vector<Vertex> common_neighbors(const Graph& g, std::span<const Vertex> vs);

/// Color-degrees for every (v, i-th color of L(v)), aligned with the lists.
std::vector<std::vector<std::uint32_t>> color_degree_table(const Graph& g,
                                                           const ListAssignment& l);

/// All sorted s-tuples possessing at least one common neighbor, deduplicated.
std::vector<std::vector<Vertex>> tuples_with_common_neighbor(const Graph& g, int s);

/// The same tuples together with their plain s-codegree (the tuple's
/// multiplicity across neighborhood subsets), in one counting pass.
std::vector<std::pair<std::vector<Vertex>, std::size_t>> tuples_by_codegree(const Graph& g,
                                                                            int s);

std::size_t max_graph_s_codegree(const Graph& g, int s);

struct MaxMetrics {
    std::size_t max_color_degree = 0;
    std::size_t max_s_codegree = 0;  // over tuples and colors in the common list
    std::size_t min_list_size = 0;
};
MaxMetrics max_metrics(const Graph& g, const ListAssignment& l, int s);

/// Trim every list to its `ell` smallest colors, then drop edges whose
/// endpoint lists are disjoint. Throws std::invalid_argument naming the
/// vertex if some list has fewer than `ell` colors.
std::pair<Graph, ListAssignment> preprocess(const Graph& g, const ListAssignment& l, int ell);

struct PairReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
    bool valid() const { return violations.empty(); }
};

/// Check every bullet of the pair definition. In non-strict mode the eta
/// window and the codegree-exponent bound demote to warnings (they are
/// vacuous below astronomical d).
PairReport validate_pair(const Graph& g, const ListAssignment& l, const PairParams& p,
                         bool strict);

/// No monochromatic edge.
bool is_proper(const Graph& g, const PartialColoring& phi);
/// No monochromatic edge and every assigned color lies in the vertex's list.
bool is_proper(const Graph& g, const ListAssignment& l, const PartialColoring& phi);
/// First violating edge (u,v) if any, for diagnostics.
std::vector<std::pair<Vertex, Vertex>> conflicting_edges(const Graph& g, const PartialColoring& phi);

}  // namespace nibble
