#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "nibble/concentration.hpp"
#include "nibble/generators.hpp"
#include "nibble/io.hpp"
#include "nibble/lab_corpus.hpp"
#include "nibble/partition.hpp"
#include "nibble/pipeline.hpp"
#include "nibble/rng.hpp"
#include "nibble/sparsify.hpp"

using json = nlohmann::json;
using namespace nibble;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPipeline = 3;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    std::random_device rd;
    const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << seed << " (from entropy; pass --seed to reproduce)\n";
    return seed;
}

json round_record(std::size_t part, const RoundReport& rep, const OutcomeTrace& trace,
                  const std::vector<Vertex>& to_global) {
    json activated = json::array();
    for (Vertex v = 0; v < trace.activation.size(); ++v)
        if (trace.activation[v] != 0)
            activated.push_back({to_global[v], trace.activation[v]});
    json fired = json::array();
    for (const auto& [v, c] : trace.equalizer_fired) fired.push_back({to_global[v], c});
    json rec;
    rec["part"] = part;
    rec["round"] = rep.round;
    rec["seed"] = rep.seed;
    rec["retries"] = rep.retries;
    rec["params"] = {{"d", rep.schedule_d}, {"ell", rep.ell_round},
                     {"eta", rep.eta},      {"keep", rep.keep},
                     {"uncolor", rep.uncolor}};
    rec["activated"] = std::move(activated);
    rec["equalizer_fired"] = std::move(fired);
    rec["stats"] = {{"activated", trace.activated},
                    {"colored", trace.colored},
                    {"colored_total", rep.colored_total},
                    {"min_list_after", rep.min_list},
                    {"max_color_degree_after", rep.max_color_degree}};
    return rec;
}

json nibble_schedule_json(const NibbleSchedule& sch) {
    json out;
    out["kappa"] = sch.kappa;
    out["eta"] = sch.eta;
    out["s"] = sch.s;
    out["codegree_exponent"] = sch.codegree_exponent;
    out["error_exponent"] = sch.error_exponent;
    out["min_feasible_log_d"] = sch.min_feasible_log_d;
    out["strict_feasible"] = sch.strict_feasible;
    out["iteration_cap"] = sch.iteration_cap;
    if (sch.i_star) out["i_star"] = *sch.i_star;
    out["cap_hit"] = sch.cap_hit;
    out["degenerate"] = sch.degenerate;
    if (!sch.rows.empty())
        // dependency degree of the bad-event family, 2^18 * 3^2 * d^{s+13}, as a log
        out["lll_dependency_log_degree"] =
            std::log(9.0) + 18.0 * std::log(2.0) + (sch.s + 13.0) * std::log(sch.rows[0].d);
    json rows = json::array();
    const std::size_t limit = std::min<std::size_t>(sch.rows.size(), 512);
    for (std::size_t i = 0; i < limit; ++i) {
        const auto& r = sch.rows[i];
        rows.push_back({{"d", r.d},
                        {"ell", r.ell},
                        {"keep", r.keep},
                        {"uncolor", r.uncolor},
                        {"d_hat", r.d_hat},
                        {"ell_hat", r.ell_hat},
                        {"c1", r.c1},
                        {"c2", r.c2},
                        {"c3", r.c3},
                        {"ratio_hyp", r.ratio_hyp},
                        {"hat_hyp", r.hat_hyp}});
    }
    out["rows"] = std::move(rows);
    out["rows_truncated"] = sch.rows.size() > limit;
    return out;
}

json partition_schedule_json(const PartitionSchedule& sch) {
    json out;
    out["delta"] = sch.delta;
    out["zeta"] = sch.zeta;
    out["epsilon"] = sch.epsilon;
    out["s"] = sch.s;
    out["k"] = sch.k;
    out["i_star"] = sch.i_star;
    out["d_seq"] = sch.d_seq;
    out["t_seq"] = sch.t_seq;
    out["t_sqrt_ok"] = sch.t_sqrt_ok;
    out["feasible"] = sch.feasible;
    // logged diagnostics: the asymptotic quantities the analysis tracks
    double sum_d_inv6 = 0;
    for (std::size_t i = 0; i + 1 < sch.d_seq.size(); ++i)
        sum_d_inv6 += std::pow(sch.d_seq[i], -1.0 / 6.0);
    out["sum_d_inv_sixth"] = sum_d_inv6;
    if (!sch.d_seq.empty()) {
        const double d_star = sch.d_seq.back();
        const double t_star = sch.t_seq.back();
        out["log16s_d_istar"] =
            d_star > 1 ? std::pow(std::log(d_star), 16.0 * sch.s)
                       : 0.0;
        out["d_over_t_istar"] = t_star > 0 ? d_star / t_star : 0.0;
    }
    return out;
}

int cmd_gen(const std::string& spec_path, const std::string& out_path,
            const std::string& lists_path) {
    std::ifstream in(spec_path);
    if (!in) {
        std::cerr << "gen: cannot open " << spec_path << "\n";
        return kExitUsage;
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        std::cerr << "gen: " << spec_path << ": " << e.what() << "\n";
        return kExitUsage;
    }

    GenSpec spec;
    try {
        spec.family = GenSpec::family_from_string(j.value("family", "gnp"));
        spec.n = j.value("n", std::size_t{0});
        spec.target_degree = j.value("target_degree", 0.0);
        spec.codegree_cap = j.value("codegree_cap", -1.0);
        spec.s = j.value("s", 2);
        spec.seed = j.value("seed", std::uint64_t{0});
        spec.fixture_name = j.value("fixture", "");
    } catch (const std::exception& e) {
        std::cerr << "gen: malformed spec: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        auto result = generate(spec);
        save_edge_list(out_path, result.graph);
        for (const auto& w : result.warnings) std::cerr << "gen: warning: " << w << "\n";
        if (!lists_path.empty()) {
            if (!j.contains("lists")) {
                std::cerr << "gen: --lists given but spec has no \"lists\" block\n";
                return kExitUsage;
            }
            const auto& lj = j["lists"];
            const int q = lj.at("q").get<int>();
            const int ell = lj.at("ell").get<int>();
            const std::uint64_t lseed = lj.value("seed", spec.seed + 1);
            save_lists_json(lists_path, uniform_lists(result.graph.vertex_count(), q, ell, lseed));
        }
        std::cout << "n=" << result.graph.vertex_count() << " m=" << result.graph.edge_count()
                  << " max_degree=" << result.graph.max_degree() << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "gen: " << e.what() << "\n";
        return kExitUsage;
    }
}

struct ColorArgs {
    std::string graph_path, lists_path, out_path, trace_path;
    double eps = 0.1;
    std::optional<std::uint64_t> seed;
    std::optional<double> override_eta;
    std::optional<double> exp_codegree;  // --exp2: replaces 16*s
    std::optional<double> exp_error;     // --exp5: replaces 5
    std::optional<double> zeta;
    int s = 2;
    std::size_t retries = 8;
};

int cmd_color(const ColorArgs& args) {
    Graph g;
    try {
        g = load_edge_list(args.graph_path);
    } catch (const std::exception& e) {
        std::cerr << "color: " << e.what() << "\n";
        return kExitUsage;
    }
    const std::uint64_t seed = resolve_seed(args.seed);

    std::ofstream trace_out;
    if (!args.trace_path.empty()) {
        trace_out.open(args.trace_path);
        if (!trace_out) {
            std::cerr << "color: cannot open " << args.trace_path << " for writing\n";
            return kExitUsage;
        }
    }

    PartialColoring phi;
    json summary;
    bool ok = false;

    if (args.zeta) {
        WeakVuOptions opts;
        opts.epsilon = args.eps;
        opts.max_retries_per_round = args.retries;
        if (args.override_eta) opts.eta_override = *args.override_eta;
        if (trace_out.is_open())
            opts.trace_sink = [&](std::size_t part, const RoundReport& rep,
                                  const OutcomeTrace& trace, const std::vector<Vertex>& ids) {
                trace_out << round_record(part, rep, trace, ids).dump() << "\n";
            };
        try {
            auto res = weak_vu_pipeline(g, *args.zeta, args.eps, args.s, seed, opts);
            ok = res.ok;
            phi = std::move(res.phi);
            summary["mode"] = "weak_vu";
            summary["parts"] = res.parts;
            summary["palette_total"] = res.palette_total;
            summary["colors_used"] = res.colors_used;
            summary["k"] = res.schedule.k;
            summary["schedule"] = partition_schedule_json(res.schedule);
            if (!res.ok) summary["error"] = res.message;
        } catch (const std::exception& e) {
            std::cerr << "color: " << e.what() << "\n";
            return kExitPipeline;
        }
    } else {
        if (args.lists_path.empty()) {
            std::cerr << "color: --lists is required unless --zeta is given\n";
            return kExitUsage;
        }
        ListAssignment lists;
        try {
            lists = load_lists_json(args.lists_path);
        } catch (const std::exception& e) {
            std::cerr << "color: " << e.what() << "\n";
            return kExitUsage;
        }
        if (lists.vertex_count() != g.vertex_count()) {
            std::cerr << "color: lists cover " << lists.vertex_count() << " vertices, graph has "
                      << g.vertex_count() << "\n";
            return kExitUsage;
        }
        PipelineOptions opts;
        opts.epsilon = args.eps;
        opts.s = args.s;
        opts.strict = !args.override_eta.has_value();
        opts.eta_override = args.override_eta;
        opts.codegree_exponent = args.exp_codegree;
        opts.error_exponent = args.exp_error;
        opts.max_retries_per_round = args.retries;
        if (trace_out.is_open())
            opts.trace_sink = [&](const RoundReport& rep, const OutcomeTrace& trace,
                                  const std::vector<Vertex>& ids) {
                trace_out << round_record(0, rep, trace, ids).dump() << "\n";
            };
        try {
            auto res = color_with_pipeline(g, lists, opts, seed);
            ok = res.ok;
            phi = std::move(res.phi);
            summary["mode"] = args.override_eta ? "override" : "strict";
            summary["rounds"] = res.rounds;
            summary["finisher_sweeps"] = res.finisher_sweeps;
            summary["colors_used"] = res.colors_used;
            summary["min_feasible_log_d"] = res.schedule.min_feasible_log_d;
            summary["schedule"] = nibble_schedule_json(res.schedule);
            json rounds = json::array();
            for (const auto& rep : res.round_reports)
                rounds.push_back({{"round", rep.round},
                                  {"retries", rep.retries},
                                  {"colored", rep.colored_this_round},
                                  {"colored_total", rep.colored_total},
                                  {"min_list", rep.min_list},
                                  {"max_color_degree", rep.max_color_degree}});
            summary["rounds_detail"] = std::move(rounds);
            summary["handoff"] = {{"vertices", res.handoff_vertices},
                                  {"min_list", res.handoff_min_list},
                                  {"finisher_sweeps", res.finisher_sweeps}};
            if (!res.ok) summary["error"] = res.message;
        } catch (const std::exception& e) {
            std::cerr << "color: " << e.what() << "\n";
            return kExitPipeline;
        }
    }

    summary["proper_total"] = ok;
    summary["seed"] = seed;
    if (!args.out_path.empty() && ok) save_coloring_json(args.out_path, phi);
    std::cout << summary.dump() << "\n";
    if (!ok) {
        std::string detail;
        if (summary.contains("error")) detail = ": " + summary["error"].get<std::string>();
        std::cerr << "color: no proper total coloring produced" << detail << "\n";
        return kExitPipeline;
    }
    return kExitOk;
}

int cmd_verify(const std::string& graph_path, const std::string& coloring_path,
               const std::string& lists_path) {
    try {
        Graph g = load_edge_list(graph_path);
        PartialColoring phi = load_coloring_json(coloring_path);
        if (phi.vertex_count() != g.vertex_count()) {
            std::cerr << "verify: coloring covers " << phi.vertex_count()
                      << " vertices, graph has " << g.vertex_count() << "\n";
            return kExitUsage;
        }
        const auto bad = conflicting_edges(g, phi);
        if (!bad.empty()) {
            std::cerr << "verify: improper edge (" << bad[0].first << "," << bad[0].second
                      << ") shares color " << phi.color(bad[0].first) << "\n";
            return kExitVerification;
        }
        if (!lists_path.empty()) {
            ListAssignment lists = load_lists_json(lists_path);
            for (Vertex v = 0; v < phi.vertex_count(); ++v)
                if (phi.has(v) && !lists.contains(v, phi.color(v))) {
                    std::cerr << "verify: vertex " << v << " wears color " << phi.color(v)
                              << " outside its list\n";
                    return kExitVerification;
                }
        }
        std::cout << "proper (" << phi.domain_size() << "/" << g.vertex_count()
                  << " vertices colored)\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_stats(const std::string& graph_path, const std::string& lists_path, int s, double d_flag,
              double ell_flag, double eta_flag) {
    try {
        Graph g = load_edge_list(graph_path);
        ListAssignment lists = load_lists_json(lists_path);
        if (lists.vertex_count() != g.vertex_count()) {
            std::cerr << "stats: lists cover " << lists.vertex_count() << " vertices, graph has "
                      << g.vertex_count() << "\n";
            return kExitUsage;
        }
        auto metrics = max_metrics(g, lists, s);
        PairParams p;
        p.d = d_flag > 0 ? d_flag : std::max<double>(1.0, static_cast<double>(metrics.max_color_degree));
        p.ell = ell_flag > 0 ? static_cast<int>(ell_flag)
                             : static_cast<int>(metrics.min_list_size);
        p.s = s;
        p.eta = eta_flag;
        p.codegree_exponent = 16.0 * s;
        auto report = validate_pair(g, lists, p, /*strict=*/false);

        json out;
        out["n"] = g.vertex_count();
        out["m"] = g.edge_count();
        out["max_degree"] = g.max_degree();
        out["max_color_degree"] = metrics.max_color_degree;
        out["max_s_codegree"] = metrics.max_s_codegree;
        out["min_list_size"] = metrics.min_list_size;
        out["pair"] = {{"d", p.d},
                       {"ell", p.ell},
                       {"s", p.s},
                       {"eta", p.eta},
                       {"codegree_exponent", p.codegree_exponent},
                       {"violations", report.violations},
                       {"warnings", report.warnings},
                       {"valid", report.valid()}};
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "stats: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_lab_run(const std::string& corpus_path, const std::string& tau_grid) {
    std::ifstream in(corpus_path);
    if (!in) {
        std::cerr << "lab run: cannot open " << corpus_path << "\n";
        return kExitUsage;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    std::vector<double> grid;
    std::vector<StructureInstance> corpus;
    json pairs = json::array();
    try {
        grid = parse_tau_grid(tau_grid);
        json doc = json::parse(buf.str());
        corpus = corpus_from_json(buf.str());
        if (doc.contains("talagrand_pairs")) pairs = doc["talagrand_pairs"];
    } catch (const std::exception& e) {
        std::cerr << "lab run: " << e.what() << "\n";
        return kExitUsage;
    }

    json out;
    out["structures"] = json::array();
    bool failed = false;
    for (const auto& inst : corpus) {
        auto ws = inst.materialize();
        auto rep = verify_inequality(inst.space, ws, grid);
        json r;
        r["name"] = inst.name;
        r["structure_ok"] = rep.structure_ok;
        if (!rep.structure_ok) r["issue"] = rep.issue;
        r["checked"] = rep.checked;
        r["out_of_regime"] = rep.out_of_regime;
        r["violations"] = rep.violation_taus;
        out["structures"].push_back(std::move(r));
        if (!rep.structure_ok || rep.violations()) failed = true;
    }

    out["talagrand"] = json::array();
    for (const auto& pj : pairs) {
        try {
            const auto m = pj.at("m").get<std::size_t>();
            const auto ca = pj.at("a_center").get<std::vector<int>>();
            const auto cb = pj.at("b_center").get<std::vector<int>>();
            const int ra = pj.at("a_radius").get<int>();
            const int rb = pj.at("b_radius").get<int>();
            if (ca.size() != m || cb.size() != m)
                throw std::invalid_argument("talagrand pair: center arity mismatch");
            auto space = ProductSpace::fair_coins(m);
            auto ball = [](std::vector<int> center, int radius) {
                return [center, radius](const Outcome& x) {
                    int diff = 0;
                    for (std::size_t i = 0; i < x.size(); ++i)
                        if (x[i] != center[i]) ++diff;
                    return diff <= radius;
                };
            };
            auto rep = verify_talagrand(space, ball(ca, ra), ball(cb, rb));
            json r;
            r["pr_a"] = rep.pr_a;
            r["pr_b"] = rep.pr_b;
            r["dist"] = rep.dist;
            r["bound"] = rep.bound;
            r["holds"] = rep.holds;
            out["talagrand"].push_back(std::move(r));
            if (!rep.holds) failed = true;
        } catch (const std::exception& e) {
            std::cerr << "lab run: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    std::cout << out.dump(2) << "\n";
    return failed ? kExitVerification : kExitOk;
}

int cmd_lab_gen(const std::string& out_path, int count, std::uint64_t seed, std::size_t max_m) {
    std::vector<StructureInstance> corpus;
    for (int i = 0; i < count; ++i) {
        RandomStructureOptions opts;
        opts.max_trials = max_m;
        opts.max_indicators = 14;
        opts.exceptional_mode = i % 3;
        corpus.push_back(random_conjunction_structure(derive_seed(seed, static_cast<std::uint64_t>(i)), opts));
    }
    json doc = json::parse(corpus_to_json(corpus));
    doc["talagrand_pairs"] = json::array();
    Rng rng(derive_seed(seed, 0x7A1A));
    for (int i = 0; i < std::max(1, count / 2); ++i) {
        const std::size_t m = 8 + rng.next_below(3);
        json pair;
        std::vector<int> a(m), b(m);
        for (auto& x : a) x = static_cast<int>(rng.next_below(2));
        for (auto& x : b) x = static_cast<int>(rng.next_below(2));
        pair["m"] = m;
        pair["a_center"] = a;
        pair["b_center"] = b;
        pair["a_radius"] = 1 + static_cast<int>(rng.next_below(2));
        pair["b_radius"] = 1 + static_cast<int>(rng.next_below(2));
        doc["talagrand_pairs"].push_back(std::move(pair));
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "lab gen: cannot open " << out_path << " for writing\n";
        return kExitUsage;
    }
    out << doc.dump(2) << "\n";
    std::cout << "wrote " << count << " structures to " << out_path << "\n";
    return kExitOk;
}

int cmd_sparsify(const std::string& graph_path, int q, int ell, int trials,
                 const std::optional<std::uint64_t>& seed_flag, int parallel) {
    Graph g;
    try {
        g = load_edge_list(graph_path);
    } catch (const std::exception& e) {
        std::cerr << "sparsify: " << e.what() << "\n";
        return kExitUsage;
    }
    const std::uint64_t seed = resolve_seed(seed_flag);

    struct Row {
        std::uint64_t seed = 0;
        std::size_t e_prime = 0;
        bool success = false;
        std::size_t colors_used = 0;
        double wall_ms = 0;
    };
    std::vector<Row> rows(static_cast<std::size_t>(trials));

    auto work = [&](int t) {
        const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
        PipelineOptions opts;
        opts.eta_override = 0.1;
        const auto start = std::chrono::steady_clock::now();
        auto res = sparsify_and_color(g, q, ell, trial_seed, opts);
        const auto stop = std::chrono::steady_clock::now();
        rows[static_cast<std::size_t>(t)] = {
            trial_seed, res.e_prime, res.success, res.colors_used,
            std::chrono::duration<double, std::milli>(stop - start).count()};
    };

    if (parallel > 1) {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int w = 0; w < parallel; ++w)
            pool.emplace_back([&] {
                for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) work(t);
            });
        for (auto& th : pool) th.join();
    } else {
        for (int t = 0; t < trials; ++t) work(t);
    }

    // rows print in trial order, so the csv is independent of scheduling
    std::cout << "seed,q,ell,e_prime,success,colors_used,wall_ms\n";
    for (const auto& r : rows) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
        std::cout << r.seed << ',' << q << ',' << ell << ',' << r.e_prime << ','
                  << (r.success ? 1 : 0) << ',' << r.colors_used << ',' << buf << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"randomized list-coloring engine and verification lab"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a graph (and optional lists) from a spec");
    std::string gen_spec, gen_out, gen_lists;
    gen->add_option("--spec", gen_spec, "generator spec (json)")->required();
    gen->add_option("--out", gen_out, "output edge list path")->required();
    gen->add_option("--lists", gen_lists, "also write uniform lists here");

    auto* color = app.add_subcommand("color", "run the coloring pipeline");
    ColorArgs cargs;
    color->add_option("--graph", cargs.graph_path, "edge list")->required();
    color->add_option("--lists", cargs.lists_path, "list assignment (json)");
    color->add_option("--eps", cargs.eps, "epsilon in (0, 1/3)");
    std::optional<std::uint64_t> color_seed;
    color->add_option("--seed", color_seed, "master seed");
    std::optional<double> oeta, oexp2, oexp5, ozeta;
    color->add_option("--override-eta", oeta, "desk-scale eta (enables override mode)");
    color->add_option("--exp2", oexp2, "override for the codegree exponent 16*s");
    color->add_option("--exp5", oexp5, "override for the error exponent 5");
    color->add_option("--zeta", ozeta, "enable the partition pipeline with this zeta");
    color->add_option("--s", cargs.s, "codegree arity");
    color->add_option("--retries", cargs.retries, "max retries per round");
    color->add_option("--out", cargs.out_path, "coloring output (json)");
    color->add_option("--trace", cargs.trace_path, "round trace output (jsonl)");

    auto* verify = app.add_subcommand("verify", "check a coloring");
    std::string v_graph, v_coloring, v_lists;
    verify->add_option("--graph", v_graph)->required();
    verify->add_option("--coloring", v_coloring)->required();
    verify->add_option("--lists", v_lists);

    auto* stats = app.add_subcommand("stats", "metrics and pair validation");
    std::string s_graph, s_lists;
    int s_arity = 2;
    double s_d = 0, s_ell = 0, s_eta = 0;
    stats->add_option("--graph", s_graph)->required();
    stats->add_option("--lists", s_lists)->required();
    stats->add_option("--s", s_arity);
    stats->add_option("--d", s_d, "claimed color-degree bound (default: measured)");
    stats->add_option("--ell", s_ell, "claimed list size (default: measured min)");
    stats->add_option("--eta", s_eta, "activation probability to validate");

    auto* lab = app.add_subcommand("lab", "concentration lab");
    lab->require_subcommand(1);
    auto* lab_run = lab->add_subcommand("run", "verify a corpus");
    std::string corpus_path, tau_grid = "1:20:1";
    lab_run->add_option("--corpus", corpus_path)->required();
    lab_run->add_option("--tau-grid", tau_grid, "a:b:step");
    auto* lab_gen = lab->add_subcommand("gen", "generate a corpus");
    std::string lab_out;
    int lab_count = 20;
    std::uint64_t lab_seed = 1;
    std::size_t lab_max_m = 10;
    lab_gen->add_option("--out", lab_out)->required();
    lab_gen->add_option("--count", lab_count);
    lab_gen->add_option("--seed", lab_seed);
    lab_gen->add_option("--max-m", lab_max_m, "max trials per structure");

    auto* sparsify = app.add_subcommand("sparsify", "palette sparsification trials (csv)");
    std::string sp_graph;
    int sp_q = 0, sp_ell = 0, sp_trials = 1, sp_parallel = 1;
    std::optional<std::uint64_t> sp_seed;
    sparsify->add_option("--graph", sp_graph)->required();
    sparsify->add_option("--q", sp_q)->required();
    sparsify->add_option("--ell", sp_ell)->required();
    sparsify->add_option("--trials", sp_trials);
    sparsify->add_option("--seed", sp_seed);
    sparsify->add_option("--parallel", sp_parallel);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*gen) return cmd_gen(gen_spec, gen_out, gen_lists);
    if (*color) {
        cargs.seed = color_seed;
        cargs.override_eta = oeta;
        cargs.exp_codegree = oexp2;
        cargs.exp_error = oexp5;
        cargs.zeta = ozeta;
        return cmd_color(cargs);
    }
    if (*verify) return cmd_verify(v_graph, v_coloring, v_lists);
    if (*stats) return cmd_stats(s_graph, s_lists, s_arity, s_d, s_ell, s_eta);
    if (*lab) {
        if (*lab_run) return cmd_lab_run(corpus_path, tau_grid);
        if (*lab_gen) return cmd_lab_gen(lab_out, lab_count, lab_seed, lab_max_m);
    }
    if (*sparsify) return cmd_sparsify(sp_graph, sp_q, sp_ell, sp_trials, sp_seed, sp_parallel);
    return kExitUsage;
}
