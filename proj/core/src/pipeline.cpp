#include "nibble/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "nibble/rng.hpp"

namespace nibble {

PipelineResult color_with_pipeline(const Graph& g, const ListAssignment& l,
                                   const PipelineOptions& opts, std::uint64_t seed) {
    PipelineResult out;
    const std::size_t n = g.vertex_count();
    if (n == 0) {
        out.ok = true;
        return out;
    }

    std::size_t max_cd = 0;
    for (const auto& row : color_degree_table(g, l))
        for (std::uint32_t c : row) max_cd = std::max<std::size_t>(max_cd, c);
    const double d1 = std::max<double>(2.0, static_cast<double>(max_cd));

    ScheduleOptions sopts;
    sopts.s = opts.s;
    if (opts.eta_override) {
        sopts.eta_override = opts.eta_override;
        sopts.codegree_exponent = opts.codegree_exponent.value_or(2.0);
        sopts.error_exponent = opts.error_exponent.value_or(2.0);
        sopts.ell1_override = static_cast<double>(l.min_list_size());
        sopts.d_tilde = 2.0;  // (C1) rebased; the paper constant is vacuous here
    } else {
        sopts.codegree_exponent = opts.codegree_exponent;
        sopts.error_exponent = opts.error_exponent;
    }
    out.schedule = build_nibble_schedule(d1, opts.epsilon, sopts);

    RunOptions ropts;
    ropts.max_retries_per_round = opts.max_retries_per_round;
    ropts.strict = opts.strict;
    ropts.trace_sink = opts.trace_sink;

    NibbleRun run = run_nibble(g, l, out.schedule, derive_seed(seed, 1), ropts);
    out.nibble_status = run.status;
    out.rounds = run.rounds.size();
    out.round_reports = run.rounds;
    out.handoff_vertices = run.remaining.vertex_count();
    out.handoff_min_list =
        run.remaining.vertex_count() ? run.remaining_lists.min_list_size() : 0;
    if (run.status == NibbleRun::Status::refused) {
        out.message = run.message;
        return out;
    }
    if (run.status == NibbleRun::Status::retries_exhausted)
        out.message = "rounds aborted (" + run.message + "); finisher rescue attempted";

    out.phi = std::move(run.phi);
    if (run.remaining.vertex_count() > 0) {
        FinishResult fin = complete_coloring(run.remaining, run.remaining_lists,
                                             derive_seed(seed, 2), opts.finisher_sweeps);
        out.finisher_sweeps = fin.sweeps;
        if (!fin.ok()) {
            out.message += (out.message.empty() ? "" : "; ") + fin.message;
            return out;
        }
        for (Vertex v = 0; v < run.remaining.vertex_count(); ++v)
            out.phi.set(run.remaining_ids[v], fin.phi.color(v));
    }

    if (out.phi.domain_size() != n || !is_proper(g, l, out.phi)) {
        out.message += (out.message.empty() ? "" : "; ") + std::string("final verification failed");
        return out;
    }
    std::vector<Color> used;
    used.reserve(n);
    for (Vertex v = 0; v < n; ++v) used.push_back(out.phi.color(v));
    std::sort(used.begin(), used.end());
    out.colors_used = std::unique(used.begin(), used.end()) - used.begin();
    out.ok = true;
    return out;
}

}  // namespace nibble
