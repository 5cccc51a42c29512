#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nibble/graph.hpp"
#include "nibble/wcp.hpp"

namespace nibble {

struct ScheduleOptions {
    int s = 2;
    /// Replaces eta = kappa/log d. Enables override (desk-scale) mode.
    std::optional<double> eta_override;
    /// Replaces the codegree exponent 16*s.
    std::optional<double> codegree_exponent;
    /// Replaces the error-term exponent 5 in ell/log^5 ell and d/log^5 d.
    std::optional<double> error_exponent;
    /// Replaces ell_1 = (1+eps)*d/log d (used when driving measured pairs).
    std::optional<double> ell1_override;
    /// The "sufficiently large constant" floor for condition (C1).
    double d_tilde = static_cast<double>(1 << 20);
};

struct ScheduleRow {
    double d = 0, ell = 0;
    double keep = 1, uncolor = 1;
    double d_hat = 0, ell_hat = 0;  // error-free companions
    bool c1 = false, c2 = false, c3 = false;
    /// decreasing-ratio hypotheses at this index: 8d >= ell, eta >= 6/log^5 d,
    /// eta >= 6/log^5 ell (original exponents regardless of overrides)
    bool ratio_hyp = false;
    /// error-term-comparison hypotheses: eta >= 20/log^3 d, eta >= 20/log^3 ell
    bool hat_hyp = false;
};

struct NibbleSchedule {
    double epsilon = 0;
    double kappa = 0;
    double eta = 0;
    int s = 2;
    double codegree_exponent = 32;
    double error_exponent = 5;
    double d_tilde = 0;
    std::vector<ScheduleRow> rows;          // rows[i-1] describes iteration i
    std::optional<std::size_t> i_star;      // first 1-based index with ell >= 8d
    std::size_t iteration_cap = 0;          // 10/eta * log log d bound
    bool cap_hit = false;
    bool degenerate = false;                // recursion left the positive reals
    double min_feasible_log_d = 0;          // C3-lower feasibility: need log d > 1/kappa
    bool strict_feasible = false;           // C1..C3 hold on every row before i_star
};

/// kappa(eps) = (1 + eps/2) * log(1 + eps/100)
double kappa_value(double epsilon);

NibbleSchedule build_nibble_schedule(double d, double epsilon, const ScheduleOptions& opts = {});

struct BadEventReport {
    std::vector<Vertex> list_events;                              // |L'(v)| <= ell'
    std::vector<std::pair<Vertex, Color>> degree_events;          // d_{L'}(v,c) >= d'
    std::vector<std::pair<std::vector<Vertex>, Color>> codegree_events;
    bool empty() const {
        return list_events.empty() && degree_events.empty() && codegree_events.empty();
    }
    std::size_t total() const {
        return list_events.size() + degree_events.size() + codegree_events.size();
    }
};

/// Exact scan of the per-round guarantees against (ell', d', d'/log^exponent d').
BadEventReport detect_bad_events(const Graph& g, const ListAssignment& l, double ell_next,
                                 double d_next, int s, double codegree_exponent);

struct RoundReport {
    std::size_t round = 0;
    std::uint64_t seed = 0;
    std::size_t retries = 0;
    std::size_t colored_this_round = 0;
    std::size_t colored_total = 0;
    std::size_t min_list = 0;
    std::size_t max_color_degree = 0;
    double schedule_ell = 0, schedule_d = 0;
    int ell_round = 0;  // trimmed integer list size used by the round
    double eta = 0, keep = 0, uncolor = 0;
};

/// Trace hook: (report, trace, round-input-id -> original-id).
using TraceSink =
    std::function<void(const RoundReport&, const OutcomeTrace&, const std::vector<Vertex>&)>;

struct RunOptions {
    std::size_t max_retries_per_round = 8;
    bool strict = false;  // refuse to run rounds when the schedule is strictly infeasible
    /// Hand off before a round whose list guarantee would fall to the max
    /// remaining degree while a greedy completion is still possible. Disable
    /// to run tight desk-scale schedules to exhaustion.
    bool preserve_greedy_handoff = true;
    TraceSink trace_sink;
};

struct NibbleRun {
    enum class Status { completed, retries_exhausted, refused };
    Status status = Status::completed;
    PartialColoring phi;  // accumulated, on the original vertex ids
    Graph remaining;
    ListAssignment remaining_lists;
    std::vector<Vertex> remaining_ids;  // remaining's id -> original id
    std::vector<RoundReport> rounds;
    BadEventReport last_bad;
    std::string message;
};

/// Iterate rounds (with per-round retry resampling on bad events) until the
/// finisher threshold min|L| >= 8 * max color-degree is reached, the schedule
/// ends, or retries run out. The remaining pair is handed back to the caller.
NibbleRun run_nibble(const Graph& g, const ListAssignment& l, const NibbleSchedule& schedule,
                     std::uint64_t seed, const RunOptions& opts = {});

}  // namespace nibble
