#include "nibble/wcp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nibble/rng.hpp"

namespace nibble {

RoundParams RoundParams::make(double d, int ell, int s, double eta) {
    if (ell < 1) throw std::invalid_argument("ell must be >= 1");
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("eta must lie in [0,1]");
    if (d < 0.0) throw std::invalid_argument("d must be nonnegative");
    RoundParams p;
    p.d = d;
    p.ell = ell;
    p.s = s;
    p.eta = eta;
    p.keep = keep_value(d, ell, eta);
    p.uncolor = 1.0 - eta * p.keep;
    return p;
}

double keep_value(double d, double ell, double eta) {
    if (ell < 1.0) throw std::invalid_argument("ell must be >= 1");
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("eta must lie in [0,1]");
    if (d == 0.0 || eta == 0.0) return 1.0;
    // (1 - eta/ell)^d through log1p: survives eta/ell below double epsilon
    return std::exp(d * std::log1p(-eta / ell));
}

double eq_value(const RoundParams& p, double dvc) {
    if (dvc > p.d)
        throw std::invalid_argument("color-degree " + std::to_string(dvc) +
                                    " exceeds bound d = " + std::to_string(p.d) +
                                    "; eq would exceed 1");
    if (p.d == dvc || p.eta == 0.0) return 1.0;
    return std::exp((p.d - dvc) * std::log1p(-p.eta / p.ell));
}

namespace {

void check_round_preconditions(const Graph& g, const ListAssignment& l, const RoundParams& p,
                               PairCheck check) {
    if (check == PairCheck::skip) return;
    if (g.vertex_count() != l.vertex_count())
        throw std::invalid_argument("graph/list vertex counts differ");
    for (Vertex v = 0; v < l.vertex_count(); ++v)
        if (l.list(v).size() != static_cast<std::size_t>(p.ell))
            throw std::invalid_argument("pair not preprocessed: |L(" + std::to_string(v) +
                                        ")| = " + std::to_string(l.list(v).size()) +
                                        " != ell = " + std::to_string(p.ell));
    if (check == PairCheck::strict) {
        PairParams pp = PairParams::make(p.d, p.ell, p.s, p.eta);
        auto report = validate_pair(g, l, pp, /*strict=*/true);
        if (!report.valid())
            throw std::invalid_argument("pair condition violated: " + report.violations.front());
    }
}

}  // namespace

RoundContext make_round_context(const Graph& g, const ListAssignment& l, const RoundParams& p) {
    RoundContext ctx;
    ctx.color_degrees = color_degree_table(g, l);
    ctx.flip_probs.resize(ctx.color_degrees.size());
    for (Vertex v = 0; v < ctx.color_degrees.size(); ++v) {
        const auto& cdv = ctx.color_degrees[v];
        ctx.flip_probs[v].resize(cdv.size());
        for (std::size_t i = 0; i < cdv.size(); ++i) {
            if (static_cast<double>(cdv[i]) > p.d)
                throw std::invalid_argument("pair condition violated: color-degree " +
                                            std::to_string(cdv[i]) + " at vertex " +
                                            std::to_string(v) + " exceeds d");
            ctx.flip_probs[v][i] = 1.0 - eq_value(p, static_cast<double>(cdv[i]));
        }
    }
    return ctx;
}

RoundOutput run_round(const Graph& g, const ListAssignment& l, const RoundParams& p,
                      std::uint64_t seed, PairCheck check) {
    return run_round(g, l, p, seed, check, make_round_context(g, l, p));
}

RoundOutput run_round(const Graph& g, const ListAssignment& l, const RoundParams& p,
                      std::uint64_t seed, PairCheck check, const RoundContext& ctx) {
    check_round_preconditions(g, l, p, check);
    const std::size_t n = g.vertex_count();
    Rng rng(seed);

    RoundOutput out;
    out.trace.seed = seed;
    out.trace.activation.assign(n, 0);
    out.phi = PartialColoring(n);

    // Step 3: activations, ascending vertex id.
    std::vector<Vertex> activated;
    for (Vertex v = 0; v < n; ++v)
        if (rng.bernoulli(p.eta)) activated.push_back(v);
    out.trace.activated = activated.size();

    // Step 4: uniform color assignments, ascending activated id.
    for (Vertex v : activated) {
        const auto& lv = l.list(v);
        out.trace.activation[v] = lv[rng.next_below(lv.size())];
    }

    // Step 5: wasteful removal. removed[v][i] marks L(v)[i] as gone.
    std::vector<std::vector<char>> removed(n);
    for (Vertex v = 0; v < n; ++v) removed[v].assign(l.list(v).size(), 0);
    auto remove_color = [&](Vertex u, Color c) {
        const auto& lu = l.list(u);
        const auto it = std::lower_bound(lu.begin(), lu.end(), c);
        if (it != lu.end() && *it == c) removed[u][it - lu.begin()] = 1;
    };
    for (Vertex v : activated) {
        const Color c = out.trace.activation[v];
        for (Vertex u : g.neighbors(v)) remove_color(u, c);
    }

    // Steps 6-7: survivors of step 5 among activated vertices become colored.
    for (Vertex v : activated) {
        const Color c = out.trace.activation[v];
        const auto& lv = l.list(v);
        const auto it = std::lower_bound(lv.begin(), lv.end(), c);
        if (!removed[v][it - lv.begin()]) out.phi.set(v, c);
    }
    out.trace.colored = out.phi.domain_size();

    // Step 8: equalizing coin flips, ascending (v, c), drawn for every pair
    // so the stream layout does not depend on earlier outcomes. A fired flip
    // removes the color from L'(v) but never uncolors v itself.
    for (Vertex v = 0; v < n; ++v) {
        const auto& lv = l.list(v);
        for (std::size_t i = 0; i < lv.size(); ++i) {
            if (rng.bernoulli(ctx.flip_probs[v][i])) {
                out.trace.equalizer_fired.emplace_back(v, lv[i]);
                removed[v][i] = 1;
            }
        }
    }

    out.trace.list_sizes_after.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        std::uint32_t sz = 0;
        for (char r : removed[v])
            if (!r) ++sz;
        out.trace.list_sizes_after[v] = sz;
    }

    // Assemble (G', L') on the uncolored vertices.
    std::vector<Vertex> uncolored;
    uncolored.reserve(n - out.phi.domain_size());
    for (Vertex v = 0; v < n; ++v)
        if (!out.phi.has(v)) uncolored.push_back(v);

    std::vector<std::vector<Color>> next_lists(uncolored.size());
    for (std::size_t j = 0; j < uncolored.size(); ++j) {
        const Vertex v = uncolored[j];
        const auto& lv = l.list(v);
        for (std::size_t i = 0; i < lv.size(); ++i)
            if (!removed[v][i]) next_lists[j].push_back(lv[i]);
    }
    out.g_next = g.induced(uncolored, &out.kept);
    out.l_next = ListAssignment(std::move(next_lists));

    out.trace.min_list_after = out.l_next.vertex_count() ? out.l_next.min_list_size() : 0;
    std::size_t max_cd = 0;
    for (const auto& row : color_degree_table(out.g_next, out.l_next))
        for (std::uint32_t c : row) max_cd = std::max<std::size_t>(max_cd, c);
    out.trace.max_color_degree_after = max_cd;
    return out;
}

double exact_survival_probability(const Graph& g, const ListAssignment& l, const RoundParams& p,
                                  Vertex v, Color c) {
    std::vector<Vertex> nlc;
    for (Vertex u : g.neighbors(v))
        if (l.contains(u, c)) nlc.push_back(u);
    if (nlc.size() > 20)
        throw std::length_error("product space too large: |N_L(v,c)| = " +
                                std::to_string(nlc.size()) + " > 20");

    const double p_assign = p.eta / static_cast<double>(p.ell);  // Pr(A_u = c)
    const double dvc = static_cast<double>(color_degree(g, l, v, c));
    const double eq = eq_value(p, dvc);

    // Enumerate every (assignment pattern, flip) outcome; Neumaier summation
    // keeps the 1e-12 comparison honest across up to 2^21 terms.
    const std::size_t k = nlc.size();
    double sum = 0.0, comp = 0.0;
    auto add = [&](double x) {
        const double t = sum + x;
        comp += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    };
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        double prob = 1.0;
        bool c_removed = false;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask & (std::size_t{1} << i)) {
                prob *= p_assign;  // this neighbor was activated and assigned c
                c_removed = true;
            } else {
                prob *= 1.0 - p_assign;
            }
        }
        for (int flip = 0; flip < 2; ++flip) {
            const double outcome_prob = prob * (flip ? (1.0 - eq) : eq);
            const bool survives = !c_removed && flip == 0;
            if (survives) add(outcome_prob);
        }
    }
    return sum + comp;
}

}  // namespace nibble
