#pragma once

#include <cstdint>
#include <vector>

#include "nibble/graph.hpp"

namespace nibble {

/// Parameters of one round of the Wasteful Coloring Procedure.
struct RoundParams {
    double d = 0;  // color-degree bound
    int ell = 0;   // uniform list size
    int s = 2;
    double eta = 0;
    double keep = 1;     // (1 - eta/ell)^d
    double uncolor = 1;  // 1 - eta*keep

    static RoundParams make(double d, int ell, int s, double eta);
};

/// keep(d, ell, eta) = (1 - eta/ell)^d
double keep_value(double d, double ell, double eta);

/// eq(v,c) = keep * (1 - eta/ell)^{-dvc} = (1 - eta/ell)^{d - dvc}.
/// Requires dvc <= d so the result is a probability.
double eq_value(const RoundParams& p, double dvc);

/// The realized product-space point of one round.
struct OutcomeTrace {
    std::uint64_t seed = 0;
    /// A_v: 0 if not activated, else the assigned color.
    std::vector<Color> activation;
    /// Equalizing coin flips that fired (E_{v,c} = 1), ascending (v, c).
    std::vector<std::pair<Vertex, Color>> equalizer_fired;
    /// |L'(v)| after steps 5 and 8, for every round-input vertex.
    std::vector<std::uint32_t> list_sizes_after;
    // round statistics
    std::size_t colored = 0;
    std::size_t activated = 0;
    std::size_t min_list_after = 0;
    std::size_t max_color_degree_after = 0;
};

enum class PairCheck { strict, relaxed, skip };

struct RoundOutput {
    Graph g_next;              // induced on the uncolored vertices, compacted
    ListAssignment l_next;     // lists of the uncolored vertices, same order
    std::vector<Vertex> kept;  // new id -> round-input id
    PartialColoring phi;       // on round-input ids
    OutcomeTrace trace;
};

/// Input-derived tables reused across repeated rounds on the same pair.
struct RoundContext {
    std::vector<std::vector<std::uint32_t>> color_degrees;  // aligned with lists
    std::vector<std::vector<double>> flip_probs;            // 1 - eq(v, c)
};
RoundContext make_round_context(const Graph& g, const ListAssignment& l, const RoundParams& p);

/// One round of the Wasteful Coloring Procedure (input must be preprocessed:
/// uniform list size ell, intersecting lists on edges).
RoundOutput run_round(const Graph& g, const ListAssignment& l, const RoundParams& p,
                      std::uint64_t seed, PairCheck check = PairCheck::relaxed);
RoundOutput run_round(const Graph& g, const ListAssignment& l, const RoundParams& p,
                      std::uint64_t seed, PairCheck check, const RoundContext& ctx);

/// Exact Pr(c in L'(v)) by enumerating the activations of N_L(v,c) together
/// with the equalizing flip. The flips are calibrated so this equals keep.
/// Throws std::length_error when |N_L(v,c)| > 20.
double exact_survival_probability(const Graph& g, const ListAssignment& l, const RoundParams& p,
                                  Vertex v, Color c);

}  // namespace nibble
