#include "nibble/lab_corpus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "nibble/rng.hpp"

namespace nibble {

using json = nlohmann::json;

std::size_t StructureInstance::outcome_id(const Outcome& x) const {
    std::size_t id = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
        id = id * space.supports[j].size() + static_cast<std::size_t>(x[j]);
    return id;
}

WitnessStructure StructureInstance::materialize() const {
    WitnessStructure ws;
    ws.n = n;
    ws.beta = beta;
    ws.D = D;
    const auto sets = witness_sets;
    const auto pats = patterns;
    ws.indicators = [sets, pats, n = this->n](const Outcome& x) {
        std::uint32_t mask = 0;
        for (int i = 0; i < n; ++i) {
            bool hit = true;
            for (std::size_t t = 0; t < sets[static_cast<std::size_t>(i)].size(); ++t) {
                const auto trial = static_cast<std::size_t>(sets[static_cast<std::size_t>(i)][t]);
                if (x[trial] != pats[static_cast<std::size_t>(i)][t]) {
                    hit = false;
                    break;
                }
            }
            if (hit) mask |= (1u << i);
        }
        return mask;
    };
    ws.witness = [sets](const Outcome&, int i) { return sets[static_cast<std::size_t>(i)]; };
    std::set<std::size_t> exc(exceptional_ids.begin(), exceptional_ids.end());
    auto self = *this;
    ws.exceptional = [self, exc](const Outcome& x) {
        return exc.count(self.outcome_id(x)) > 0;
    };
    return ws;
}

StructureInstance random_conjunction_structure(std::uint64_t seed,
                                               const RandomStructureOptions& opts) {
    Rng rng(seed);
    StructureInstance inst;
    inst.name = "conj-" + std::to_string(seed);

    const std::size_t m =
        opts.min_trials + rng.next_below(opts.max_trials - opts.min_trials + 1);
    for (std::size_t j = 0; j < m; ++j) {
        if (opts.allow_nonuniform_trials && rng.bernoulli(0.25)) {
            switch (rng.next_below(3)) {
                case 0: inst.space.supports.push_back({0.25, 0.75}); break;
                case 1: inst.space.supports.push_back({0.75, 0.25}); break;
                default: inst.space.supports.push_back({0.5, 0.25, 0.25}); break;
            }
        } else {
            inst.space.supports.push_back({0.5, 0.5});
        }
    }

    inst.n = opts.min_indicators +
             static_cast<int>(rng.next_below(
                 static_cast<std::uint64_t>(opts.max_indicators - opts.min_indicators + 1)));
    if (opts.exceptional_mode == 3) {
        // every indicator is the leading-slice conjunction itself; nothing
        // fires outside the exceptional set
        double mass = 1.0;
        std::size_t depth = 0;
        while (mass > 1.0 / 6.0 && depth < m) {
            mass *= inst.space.supports[depth][0];
            ++depth;
        }
        std::vector<int> ws(depth);
        for (std::size_t t = 0; t < depth; ++t) ws[t] = static_cast<int>(t);
        for (int i = 0; i < inst.n; ++i) {
            inst.witness_sets.push_back(ws);
            inst.patterns.push_back(std::vector<int>(depth, 0));
        }
    } else {
        for (int i = 0; i < inst.n; ++i) {
            const std::size_t size = 1 + rng.next_below(3);
            std::set<int> trials;
            while (trials.size() < size)
                trials.insert(static_cast<int>(rng.next_below(m)));
            std::vector<int> ws(trials.begin(), trials.end());
            std::vector<int> pat;
            for (int t : ws) {
                const auto support = inst.space.supports[static_cast<std::size_t>(t)].size();
                pat.push_back(static_cast<int>(rng.next_below(support)));
            }
            inst.witness_sets.push_back(std::move(ws));
            inst.patterns.push_back(std::move(pat));
        }
    }

    // exceptional outcomes
    if (opts.exceptional_mode == 1 || opts.exceptional_mode == 3) {
        // leading trials pinned at value 0 until the slice mass drops to 1/6
        double mass = 1.0;
        std::size_t depth = 0;
        while (mass > 1.0 / 6.0 && depth < m) {
            mass *= inst.space.supports[depth][0];
            ++depth;
        }
        if (mass <= 1.0 / 6.0) {
            std::vector<std::uint32_t> ids;
            Outcome x(m, 0);
            // enumerate the slice: trials < depth pinned to 0
            std::function<void(std::size_t)> rec = [&](std::size_t j) {
                if (j == m) {
                    ids.push_back(static_cast<std::uint32_t>(inst.outcome_id(x)));
                    return;
                }
                if (j < depth) {
                    x[j] = 0;
                    rec(j + 1);
                    return;
                }
                for (std::size_t v = 0; v < inst.space.supports[j].size(); ++v) {
                    x[j] = static_cast<int>(v);
                    rec(j + 1);
                }
            };
            rec(0);
            inst.exceptional_ids = std::move(ids);
        }
    } else if (opts.exceptional_mode == 2) {
        inst.exceptional_ids.push_back(
            static_cast<std::uint32_t>(rng.next_below(inst.space.outcome_count())));
    }

    // exact beta and D over the non-exceptional outcomes
    auto ws = inst.materialize();
    std::vector<int> load(m);
    double beta = 0, dsum = 0;
    for_each_outcome(inst.space, [&](const Outcome& x, double) {
        if (ws.exceptional(x)) return;
        const std::uint32_t r = ws.indicators(x);
        std::fill(load.begin(), load.end(), 0);
        double total = 0;
        for (int i = 0; i < inst.n; ++i) {
            if (!(r & (1u << i))) continue;
            for (int t : inst.witness_sets[static_cast<std::size_t>(i)])
                ++load[static_cast<std::size_t>(t)];
            total += static_cast<double>(inst.witness_sets[static_cast<std::size_t>(i)].size());
        }
        for (int lj : load) beta = std::max(beta, static_cast<double>(lj));
        dsum = std::max(dsum, total);
    });
    inst.beta = std::max(beta, 0.5);  // the tail bound needs strictly positive parameters
    inst.D = std::max(dsum, 0.5);
    return inst;
}

std::string corpus_to_json(const std::vector<StructureInstance>& corpus) {
    json out;
    out["structures"] = json::array();
    for (const auto& inst : corpus) {
        json s;
        s["name"] = inst.name;
        s["trials"] = inst.space.supports;
        s["n"] = inst.n;
        s["witness_sets"] = inst.witness_sets;
        s["patterns"] = inst.patterns;
        s["exceptional"] = inst.exceptional_ids;
        s["beta"] = inst.beta;
        s["D"] = inst.D;
        out["structures"].push_back(std::move(s));
    }
    return out.dump(2);
}

std::vector<StructureInstance> corpus_from_json(const std::string& text) {
    json in = json::parse(text);
    if (!in.contains("structures") || !in["structures"].is_array())
        throw std::invalid_argument("corpus json: missing 'structures' array");
    std::vector<StructureInstance> corpus;
    for (const auto& s : in["structures"]) {
        StructureInstance inst;
        inst.name = s.value("name", "unnamed");
        inst.space.supports = s.at("trials").get<std::vector<std::vector<double>>>();
        inst.n = s.at("n").get<int>();
        inst.witness_sets = s.at("witness_sets").get<std::vector<std::vector<int>>>();
        inst.patterns = s.at("patterns").get<std::vector<std::vector<int>>>();
        inst.exceptional_ids = s.value("exceptional", std::vector<std::uint32_t>{});
        inst.beta = s.at("beta").get<double>();
        inst.D = s.at("D").get<double>();
        if (inst.witness_sets.size() != static_cast<std::size_t>(inst.n) ||
            inst.patterns.size() != static_cast<std::size_t>(inst.n))
            throw std::invalid_argument("corpus json: witness/pattern arity mismatch in '" +
                                        inst.name + "'");
        for (int i = 0; i < inst.n; ++i) {
            const auto& ws = inst.witness_sets[static_cast<std::size_t>(i)];
            if (ws.size() != inst.patterns[static_cast<std::size_t>(i)].size())
                throw std::invalid_argument("corpus json: indicator " + std::to_string(i) +
                                            " of '" + inst.name +
                                            "' has mismatched witness/pattern sizes");
            for (int trial : ws)
                if (trial < 0 || trial >= static_cast<int>(inst.space.supports.size()))
                    throw std::invalid_argument("corpus json: indicator " + std::to_string(i) +
                                                " of '" + inst.name +
                                                "' references invalid trial " +
                                                std::to_string(trial));
        }
        inst.space.validate();
        corpus.push_back(std::move(inst));
    }
    return corpus;
}

std::vector<double> parse_tau_grid(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("tau grid must look like a:b:step");
    const double a = std::stod(text.substr(0, c1));
    const double b = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(text.substr(c2 + 1));
    if (step <= 0 || b < a) throw std::invalid_argument("tau grid requires step > 0 and b >= a");
    std::vector<double> grid;
    for (double t = a; t <= b + 1e-12; t += step) grid.push_back(t);
    return grid;
}

}  // namespace nibble
