#include "nibble/nibble_driver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nibble/rng.hpp"

namespace nibble {

double kappa_value(double epsilon) {
    return (1.0 + epsilon / 2.0) * std::log1p(epsilon / 100.0);
}

namespace {

double log_pow(double x, double exponent) {
    // log^exponent(x) for x > 1; callers guard the degenerate range
    return std::pow(std::log(x), exponent);
}

bool c2_holds(double eta, double d, double ell) { return 4.0 * eta * d < ell && ell < 8.0 * d; }

bool c3_holds(double eta, double d) {
    if (d <= 1.0) return false;
    const double ld = std::log(d);
    return eta > 1.0 / (ld * ld) && eta < 1.0 / (4.0 * ld);
}

}  // namespace

NibbleSchedule build_nibble_schedule(double d, double epsilon, const ScheduleOptions& opts) {
    if (d < 2.0) throw std::invalid_argument("schedule requires d >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0 / 3.0))
        throw std::invalid_argument("epsilon must lie in (0, 1/3)");

    NibbleSchedule sch;
    sch.epsilon = epsilon;
    sch.kappa = kappa_value(epsilon);
    sch.s = opts.s;
    sch.codegree_exponent = opts.codegree_exponent.value_or(16.0 * opts.s);
    sch.error_exponent = opts.error_exponent.value_or(5.0);
    sch.d_tilde = opts.d_tilde;
    sch.eta = opts.eta_override.value_or(sch.kappa / std::log(d));
    sch.min_feasible_log_d = 1.0 / sch.kappa;

    const double loglog = std::log(std::max(1.1, std::log(std::max(3.0, d))));
    sch.iteration_cap = static_cast<std::size_t>(
        std::max(1.0, std::ceil(10.0 / sch.eta * loglog)));
    // hard backstop so pathological overrides cannot spin forever; genuinely
    // feasible strict schedules need ~ log(8 log d) / eta rounds, well inside
    sch.iteration_cap = std::min<std::size_t>(sch.iteration_cap, 5000000);

    double di = d;
    double elli = opts.ell1_override.value_or((1.0 + epsilon) * d / std::log(d));
    double dhat = di, ellhat = elli;

    for (std::size_t i = 1; i <= sch.iteration_cap; ++i) {
        ScheduleRow row;
        row.d = di;
        row.ell = elli;
        row.d_hat = dhat;
        row.ell_hat = ellhat;
        row.c1 = di >= sch.d_tilde;
        row.c2 = c2_holds(sch.eta, di, elli);
        row.c3 = c3_holds(sch.eta, di);
        if (di > 1.0 && elli > 1.0) {
            const double l5d = log_pow(di, 5.0), l5l = log_pow(elli, 5.0);
            row.ratio_hyp = 8.0 * di >= elli && sch.eta >= 6.0 / l5d && sch.eta >= 6.0 / l5l;
            const double l3d = log_pow(di, 3.0), l3l = log_pow(elli, 3.0);
            row.hat_hyp = sch.eta >= 20.0 / l3d && sch.eta >= 20.0 / l3l;
        }

        if (elli >= 8.0 * di) {
            sch.rows.push_back(row);
            sch.i_star = i;
            break;
        }
        if (di <= 1.0 || elli <= 1.0 || !std::isfinite(di) || !std::isfinite(elli)) {
            sch.rows.push_back(row);
            sch.degenerate = true;
            break;
        }

        row.keep = keep_value(di, elli, sch.eta);
        row.uncolor = 1.0 - sch.eta * row.keep;
        sch.rows.push_back(row);

        const double e = sch.error_exponent;
        const double ell_next = row.keep * elli - elli / log_pow(elli, e);
        const double d_next = row.keep * row.uncolor * di + di / log_pow(di, e);
        ellhat = row.keep * ellhat;
        dhat = row.keep * row.uncolor * dhat;
        elli = ell_next;
        di = d_next;
    }
    if (!sch.i_star && !sch.degenerate) sch.cap_hit = true;

    sch.strict_feasible = !sch.rows.empty();
    const std::size_t checked = sch.i_star ? *sch.i_star - 1 : sch.rows.size();
    for (std::size_t i = 0; i < checked; ++i)
        if (!(sch.rows[i].c1 && sch.rows[i].c2 && sch.rows[i].c3)) sch.strict_feasible = false;
    if (checked == 0 && sch.i_star) sch.strict_feasible = true;  // zero rounds needed
    return sch;
}

BadEventReport detect_bad_events(const Graph& g, const ListAssignment& l, double ell_next,
                                 double d_next, int s, double codegree_exponent) {
    BadEventReport report;
    for (Vertex v = 0; v < l.vertex_count(); ++v)
        if (static_cast<double>(l.list(v).size()) <= ell_next) report.list_events.push_back(v);

    const auto cd = color_degree_table(g, l);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const auto& lv = l.list(v);
        for (std::size_t i = 0; i < lv.size(); ++i)
            if (static_cast<double>(cd[v][i]) >= d_next)
                report.degree_events.emplace_back(v, lv[i]);
    }

    double cod_threshold = d_next;
    if (d_next > std::exp(1.0)) cod_threshold = d_next / log_pow(d_next, codegree_exponent);
    // s-color-codegrees are bounded by common-neighborhood sizes, so only
    // tuples whose plain codegree reaches the threshold need the color scan
    std::vector<Color> shared, tmp;
    auto inspect = [&](const std::vector<Vertex>& tuple) {
        shared = l.list(tuple[0]);
        for (std::size_t i = 1; i < tuple.size() && !shared.empty(); ++i) {
            const auto& li = l.list(tuple[i]);
            tmp.clear();
            std::set_intersection(shared.begin(), shared.end(), li.begin(), li.end(),
                                  std::back_inserter(tmp));
            shared.swap(tmp);
        }
        for (Color c : shared)
            if (static_cast<double>(s_color_codegree(g, l, tuple, c)) >= cod_threshold)
                report.codegree_events.emplace_back(tuple, c);
    };
    for (const auto& [tuple, codegree] : tuples_by_codegree(g, s))
        if (static_cast<double>(codegree) >= cod_threshold) inspect(tuple);
    return report;
}

NibbleRun run_nibble(const Graph& g, const ListAssignment& l, const NibbleSchedule& schedule,
                     std::uint64_t seed, const RunOptions& opts) {
    NibbleRun run;
    const std::size_t n = g.vertex_count();
    run.phi = PartialColoring(n);

    if (opts.strict && !schedule.strict_feasible) {
        run.status = NibbleRun::Status::refused;
        run.message =
            "strict mode: schedule violates (C1)-(C3); min feasible log d = " +
            std::to_string(schedule.min_feasible_log_d);
        run.remaining = g;
        run.remaining_lists = l;
        run.remaining_ids.resize(n);
        for (Vertex v = 0; v < n; ++v) run.remaining_ids[v] = v;
        return run;
    }

    Graph cur = g;
    ListAssignment cur_lists = l;
    std::vector<Vertex> to_original(n);
    for (Vertex v = 0; v < n; ++v) to_original[v] = v;

    const std::size_t round_count = schedule.i_star ? *schedule.i_star - 1 : schedule.rows.size();
    for (std::size_t i = 1; i <= round_count; ++i) {
        if (cur.vertex_count() == 0) break;

        // finisher threshold reached: lists dominate measured color-degrees
        std::size_t max_cd = 0;
        for (const auto& row_cd : color_degree_table(cur, cur_lists))
            for (std::uint32_t c : row_cd) max_cd = std::max<std::size_t>(max_cd, c);
        if (cur_lists.min_list_size() >= 8 * std::max<std::size_t>(max_cd, 1)) break;

        const ScheduleRow& row = schedule.rows[i - 1];
        if (row.ell < 1.0 || row.d < 1.0) break;  // schedule degenerated: hand off as-is
        const int ell_int = static_cast<int>(std::ceil(row.ell));
        if (static_cast<double>(cur_lists.min_list_size()) < std::ceil(row.ell)) {
            if (i == 1) {
                run.status = NibbleRun::Status::retries_exhausted;
                run.message = "round 1: lists of size " +
                              std::to_string(cur_lists.min_list_size()) +
                              " cannot be trimmed to " + std::to_string(row.ell);
            }
            break;  // later rounds: the previous guarantee ran out, hand off
        }
        const double ell_next = i < schedule.rows.size() ? schedule.rows[i].ell : 0.0;
        const double d_next = i < schedule.rows.size() ? schedule.rows[i].d : row.d;

        if (opts.preserve_greedy_handoff) {
            // the round only guarantees |L'| > ell_next; once that stops
            // clearing the (non-increasing) max remaining degree, trading more
            // rounds for shorter lists can strand the finisher
            const std::size_t max_deg = cur.max_degree();
            if (cur_lists.min_list_size() > max_deg &&
                ell_next <= static_cast<double>(max_deg))
                break;
        }

        auto [pg, pl] = preprocess(cur, cur_lists, ell_int);
        RoundParams params = RoundParams::make(row.d, ell_int, schedule.s, schedule.eta);

        bool settled = false;
        for (std::size_t retry = 0; retry <= opts.max_retries_per_round; ++retry) {
            const std::uint64_t round_seed = derive_seed(seed, i, retry);
            RoundOutput r = run_round(pg, pl, params, round_seed, PairCheck::skip);
            BadEventReport bad = detect_bad_events(r.g_next, r.l_next, ell_next, d_next,
                                                   schedule.s, schedule.codegree_exponent);
            if (!bad.empty()) {
                run.last_bad = std::move(bad);
                if (retry == opts.max_retries_per_round) break;
                continue;
            }

            for (Vertex v : r.phi.domain()) run.phi.set(to_original[v], r.phi.color(v));
            if (!is_proper(g, run.phi))
                throw std::logic_error("internal: accumulated coloring became improper");

            RoundReport rep;
            rep.round = i;
            rep.seed = round_seed;
            rep.retries = retry;
            rep.colored_this_round = r.phi.domain_size();
            rep.colored_total = run.phi.domain_size();
            rep.min_list = r.trace.min_list_after;
            rep.max_color_degree = r.trace.max_color_degree_after;
            rep.schedule_ell = row.ell;
            rep.schedule_d = row.d;
            rep.ell_round = params.ell;
            rep.eta = params.eta;
            rep.keep = params.keep;
            rep.uncolor = params.uncolor;
            if (opts.trace_sink) opts.trace_sink(rep, r.trace, to_original);
            run.rounds.push_back(rep);

            std::vector<Vertex> next_original(r.kept.size());
            for (std::size_t j = 0; j < r.kept.size(); ++j)
                next_original[j] = to_original[r.kept[j]];
            to_original = std::move(next_original);
            cur = std::move(r.g_next);
            cur_lists = std::move(r.l_next);
            settled = true;
            break;
        }
        if (!settled) {
            run.status = NibbleRun::Status::retries_exhausted;
            if (run.message.empty())
                run.message = "round " + std::to_string(i) + ": bad events survived " +
                              std::to_string(opts.max_retries_per_round + 1) + " attempts (" +
                              std::to_string(run.last_bad.total()) + " events)";
            break;
        }
    }

    run.remaining = std::move(cur);
    run.remaining_lists = std::move(cur_lists);
    run.remaining_ids = std::move(to_original);
    return run;
}

}  // namespace nibble
