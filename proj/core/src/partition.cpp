#include "nibble/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nibble/pipeline.hpp"
#include "nibble/rng.hpp"

namespace nibble {

PartitionSchedule build_schedule(double delta, double zeta, double epsilon, int s) {
    if (delta < 1.0) throw std::invalid_argument("delta must be >= 1");
    if (!(zeta > 0.0 && zeta <= 1.0)) throw std::invalid_argument("zeta must lie in (0,1]");
    if (!(epsilon > 0.0 && epsilon < 1.0 / 3.0))
        throw std::invalid_argument("epsilon must lie in (0, 1/3)");
    if (s < 2) throw std::invalid_argument("s must be >= 2");

    PartitionSchedule sch;
    sch.delta = delta;
    sch.zeta = zeta;
    sch.epsilon = epsilon;
    sch.s = s;

    // smallest power of 2 with log(delta/k) <= (1 - eps/4) * zeta^{-1/16s},
    // compared in log space so extreme zeta cannot overflow
    const double target = (1.0 - epsilon / 4.0) * std::pow(zeta, -1.0 / (16.0 * s));
    std::size_t k = 1;
    while (std::log(delta / static_cast<double>(k)) > target) k *= 2;
    sch.k = k;
    sch.i_star = static_cast<std::size_t>(std::round(std::log2(static_cast<double>(k)))) + 1;

    double d = delta, t = zeta * delta;
    for (std::size_t i = 1; i <= sch.i_star; ++i) {
        sch.d_seq.push_back(d);
        sch.t_seq.push_back(t);
        sch.t_sqrt_ok.push_back(t > std::sqrt(d));
        d = 0.5 * d + std::pow(d, 2.0 / 3.0);
        t = 0.5 * t + std::pow(t, 2.0 / 3.0);
    }
    sch.feasible = std::all_of(sch.t_sqrt_ok.begin(), sch.t_sqrt_ok.end(), [](bool b) { return b; });
    return sch;
}

namespace {

struct Side {
    std::vector<char> in_s1;  // per-vertex side bit
};

// counts of a vertex set inside S1
std::size_t count_s1(const std::vector<Vertex>& vs, const std::vector<char>& in_s1) {
    std::size_t c = 0;
    for (Vertex v : vs) c += in_s1[v] ? 1 : 0;
    return c;
}

}  // namespace

BipartitionResult random_bipartition(const Graph& g, int s, double d, double t,
                                     std::uint64_t seed, std::size_t max_retries) {
    const std::size_t n = g.vertex_count();
    if (static_cast<double>(g.max_degree()) > d)
        throw std::invalid_argument("max degree exceeds the claimed bound d");
    if (static_cast<double>(max_graph_s_codegree(g, s)) > t)
        throw std::invalid_argument("max s-codegree exceeds the claimed bound t");

    const double degree_bound = 0.5 * d + std::pow(d, 2.0 / 3.0);
    const double codegree_bound = 0.5 * t + std::pow(t, 2.0 / 3.0);

    Rng rng(seed);
    std::vector<char> in_s1(n);
    for (Vertex v = 0; v < n; ++v) in_s1[v] = rng.bernoulli(0.5) ? 1 : 0;

    auto tuples = tuples_with_common_neighbor(g, s);
    std::sort(tuples.begin(), tuples.end());
    std::vector<std::vector<Vertex>> tuple_common;
    tuple_common.reserve(tuples.size());
    for (const auto& tp : tuples) tuple_common.push_back(common_neighbors(g, tp));

    BipartitionResult res;
    auto degree_violated = [&](Vertex v) {
        const std::size_t s1 = count_s1(g.neighbors(v), in_s1);
        const std::size_t s2 = g.degree(v) - s1;
        return static_cast<double>(s1) > degree_bound || static_cast<double>(s2) > degree_bound;
    };
    auto codegree_violated = [&](std::size_t ti) {
        const std::size_t s1 = count_s1(tuple_common[ti], in_s1);
        const std::size_t s2 = tuple_common[ti].size() - s1;
        return static_cast<double>(s1) > codegree_bound ||
               static_cast<double>(s2) > codegree_bound;
    };

    for (;;) {
        // first violated event in lexicographic order (A_v before B_tuples)
        const std::vector<Vertex>* resample_set = nullptr;
        for (Vertex v = 0; v < n && !resample_set; ++v)
            if (degree_violated(v)) resample_set = &g.neighbors(v);
        if (!resample_set) {
            for (std::size_t ti = 0; ti < tuples.size() && !resample_set; ++ti)
                if (codegree_violated(ti)) resample_set = &tuple_common[ti];
        }
        if (!resample_set) break;  // no bad event survives

        if (res.resamples >= max_retries) {
            for (Vertex v = 0; v < n; ++v)
                if (degree_violated(v))
                    res.surviving_events.push_back("degree event at vertex " + std::to_string(v));
            for (std::size_t ti = 0; ti < tuples.size(); ++ti)
                if (codegree_violated(ti)) {
                    std::string who = "codegree event at tuple (";
                    for (Vertex v : tuples[ti]) who += " " + std::to_string(v);
                    res.surviving_events.push_back(who + " )");
                }
            res.ok = false;
            return res;
        }
        ++res.resamples;
        for (Vertex v : *resample_set) in_s1[v] = rng.bernoulli(0.5) ? 1 : 0;
    }

    for (Vertex v = 0; v < n; ++v) (in_s1[v] ? res.s1 : res.s2).push_back(v);

    // independent verification of the returned split, on the induced parts
    for (const auto* part : {&res.s1, &res.s2}) {
        if (part->empty()) continue;
        Graph sub = g.induced(*part);
        if (static_cast<double>(sub.max_degree()) > degree_bound)
            throw std::logic_error("internal: bipartition degree bound violated post-hoc");
        if (static_cast<double>(max_graph_s_codegree(sub, s)) > codegree_bound)
            throw std::logic_error("internal: bipartition codegree bound violated post-hoc");
    }
    res.ok = true;
    return res;
}

WeakVuResult weak_vu_pipeline(const Graph& g, double zeta, double epsilon, int s,
                              std::uint64_t seed, const WeakVuOptions& opts) {
    WeakVuResult out;
    const std::size_t n = g.vertex_count();
    const double delta = std::max<double>(1.0, static_cast<double>(g.max_degree()));
    if (static_cast<double>(max_graph_s_codegree(g, s)) > zeta * delta)
        throw std::invalid_argument("s-codegree exceeds zeta * Delta");

    out.schedule = build_schedule(delta, zeta, epsilon, s);
    out.phi = PartialColoring(n);

    std::vector<std::vector<Vertex>> parts;
    {
        std::vector<Vertex> all(n);
        for (Vertex v = 0; v < n; ++v) all[v] = v;
        parts.push_back(std::move(all));
    }

    for (std::size_t i = 1; i < out.schedule.i_star; ++i) {
        const double di = out.schedule.d_seq[i - 1];
        const double ti = out.schedule.t_seq[i - 1];
        const std::size_t current = parts.size();
        for (std::size_t j = 0; j < current; ++j) {
            std::vector<Vertex> original;
            Graph sub = g.induced(parts[j], &original);
            auto split = random_bipartition(sub, s, di, ti, derive_seed(seed, i, j),
                                            opts.bipartition_retries);
            if (!split.ok) {
                out.ok = false;
                out.message = "bipartition failed on part " + std::to_string(j) +
                              " at level " + std::to_string(i);
                return out;
            }
            std::vector<Vertex> first, second;
            for (Vertex v : split.s1) first.push_back(original[v]);
            for (Vertex v : split.s2) second.push_back(original[v]);
            parts[j] = std::move(first);
            parts.push_back(std::move(second));
        }
    }
    out.parts = parts.size();

    // disjoint palettes: part j draws from an integer range of its own
    Color palette_base = 0;
    for (std::size_t j = 0; j < parts.size(); ++j) {
        std::vector<Vertex> original;
        Graph sub = g.induced(parts[j], &original);
        const std::size_t nv = sub.vertex_count();
        if (nv == 0) {
            out.palette_sizes.push_back(0);
            continue;
        }
        const std::size_t deg = sub.max_degree();
        // full identical lists make color-degree equal degree, so 8*deg
        // meets the finisher threshold; deg+1 keeps greedy viable even when
        // rounds shave lists
        const std::size_t q = std::max<std::size_t>(8 * std::max<std::size_t>(deg, 1), deg + 1);
        std::vector<std::vector<Color>> lists(nv);
        for (auto& lv : lists) {
            lv.resize(q);
            for (std::size_t c = 0; c < q; ++c) lv[c] = palette_base + static_cast<Color>(c) + 1;
        }
        ListAssignment la(std::move(lists));

        PipelineOptions popts;
        popts.epsilon = epsilon;
        popts.s = s;
        popts.eta_override = opts.eta_override;
        popts.max_retries_per_round = opts.max_retries_per_round;
        if (opts.trace_sink) {
            popts.trace_sink = [&, j](const RoundReport& rep, const OutcomeTrace& trace,
                                      const std::vector<Vertex>& to_sub) {
                std::vector<Vertex> to_global(to_sub.size());
                for (std::size_t v = 0; v < to_sub.size(); ++v)
                    to_global[v] = original[to_sub[v]];
                opts.trace_sink(j, rep, trace, to_global);
            };
        }
        PipelineResult sub_result = color_with_pipeline(sub, la, popts, derive_seed(seed, 0xC0103, j));
        if (!sub_result.ok) {
            out.ok = false;
            out.message = "part " + std::to_string(j) + ": " + sub_result.message;
            return out;
        }
        for (Vertex v = 0; v < nv; ++v) out.phi.set(original[v], sub_result.phi.color(v));
        out.palette_sizes.push_back(q);
        out.palette_total += q;
        palette_base += static_cast<Color>(q);
    }

    if (!is_proper(g, out.phi) || out.phi.domain_size() != n) {
        out.ok = false;
        out.message = "combined coloring failed verification";
        return out;
    }
    std::vector<Color> used;
    for (Vertex v = 0; v < n; ++v) used.push_back(out.phi.color(v));
    std::sort(used.begin(), used.end());
    out.colors_used = std::unique(used.begin(), used.end()) - used.begin();
    out.ok = true;
    return out;
}

}  // namespace nibble
