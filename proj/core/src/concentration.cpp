#include "nibble/concentration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace nibble {

std::size_t ProductSpace::outcome_count() const {
    std::size_t total = 1;
    for (const auto& s : supports) {
        if (s.empty()) throw std::invalid_argument("trial with empty support");
        if (total > (std::size_t{1} << 24) / s.size())
            throw std::length_error("product space exceeds 2^24 outcomes");
        total *= s.size();
    }
    return total;
}

ProductSpace ProductSpace::fair_coins(std::size_t m) {
    ProductSpace sp;
    sp.supports.assign(m, {0.5, 0.5});
    return sp;
}

void ProductSpace::validate() const {
    for (std::size_t j = 0; j < supports.size(); ++j) {
        double sum = 0;
        for (double p : supports[j]) {
            if (p < 0) throw std::invalid_argument("negative probability in trial " + std::to_string(j));
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("probabilities of trial " + std::to_string(j) +
                                        " sum to " + std::to_string(sum));
    }
    (void)outcome_count();
}

void for_each_outcome(const ProductSpace& space,
                      const std::function<void(const std::vector<int>&, double)>& fn) {
    const std::size_t m = space.trial_count();
    std::vector<int> x(m, 0);
    // iterative mixed-radix counter with incremental probability products
    std::vector<double> prefix(m + 1, 1.0);
    for (std::size_t j = 0; j < m; ++j) prefix[j + 1] = prefix[j] * space.supports[j][0];
    for (;;) {
        fn(x, prefix[m]);
        std::size_t j = m;
        while (j > 0) {
            --j;
            if (x[j] + 1 < static_cast<int>(space.supports[j].size())) {
                ++x[j];
                for (std::size_t k = j; k < m; ++k) {
                    if (k > j) x[k] = 0;
                    prefix[k + 1] = prefix[k] * space.supports[k][x[k]];
                }
                j = m + 1;
                break;
            }
        }
        if (j == m + 1) continue;
        break;
    }
}

StructureCheck verify_witness_structure(const ProductSpace& space, const WitnessStructure& ws) {
    StructureCheck check;
    if (ws.n < 0 || ws.n > 31) {
        check.issue = "indicator count must lie in [0,31]";
        return check;
    }

    // pass 1: beta/D per outcome, collect witness keys, masses
    struct Key {
        int indicator;
        std::vector<int> witness;   // sorted trial indices
        std::vector<int> values;    // x restricted to witness
        bool operator==(const Key& o) const {
            return indicator == o.indicator && witness == o.witness && values == o.values;
        }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::size_t h = std::hash<int>()(k.indicator);
            for (int w : k.witness) h = h * 1000003 + static_cast<std::size_t>(w) + 17;
            for (int v : k.values) h = h * 1000003 + static_cast<std::size_t>(v) + 29;
            return h;
        }
    };
    std::unordered_set<Key, KeyHash> keys;

    std::string issue;
    std::vector<int> load(space.trial_count());
    for_each_outcome(space, [&](const Outcome& x, double p) {
        check.total_mass += p;
        const bool exc = ws.exceptional(x);
        const std::uint32_t r = ws.indicators(x);
        if (exc) {
            check.pr_exceptional += p;
            check.sup_r_exceptional =
                std::max(check.sup_r_exceptional, static_cast<double>(std::popcount(r)));
            return;
        }
        if (!issue.empty()) return;
        std::fill(load.begin(), load.end(), 0);
        std::size_t total_witness = 0;
        for (int i = 0; i < ws.n; ++i) {
            if (!(r & (1u << i))) continue;
            Key key;
            key.indicator = i;
            key.witness = ws.witness(x, i);
            std::sort(key.witness.begin(), key.witness.end());
            for (int w : key.witness) {
                if (w < 0 || w >= static_cast<int>(space.trial_count())) {
                    issue = "witness set of indicator " + std::to_string(i) +
                            " references invalid trial " + std::to_string(w);
                    return;
                }
                ++load[static_cast<std::size_t>(w)];
                key.values.push_back(x[static_cast<std::size_t>(w)]);
            }
            total_witness += key.witness.size();
            keys.insert(std::move(key));
        }
        for (std::size_t j = 0; j < load.size(); ++j)
            if (static_cast<double>(load[j]) > ws.beta) {
                issue = "trial " + std::to_string(j) + " witnesses " + std::to_string(load[j]) +
                        " indicators, beta = " + std::to_string(ws.beta);
                return;
            }
        if (static_cast<double>(total_witness) > ws.D) {
            issue = "total witness size " + std::to_string(total_witness) +
                    " exceeds D = " + std::to_string(ws.D);
            return;
        }
    });
    if (std::abs(check.total_mass - 1.0) > 1e-9) {
        check.issue = "total probability mass is " + std::to_string(check.total_mass);
        return check;
    }
    if (!issue.empty()) {
        check.issue = issue;
        return check;
    }

    // pass 2: the witness property itself. Enumerate, for every key, all
    // outcomes agreeing with it on the witness coordinates; each
    // non-exceptional one must satisfy R_i = 1.
    for (const auto& key : keys) {
        std::vector<int> free_trials;
        for (std::size_t j = 0; j < space.trial_count(); ++j)
            if (!std::binary_search(key.witness.begin(), key.witness.end(), static_cast<int>(j)))
                free_trials.push_back(static_cast<int>(j));

        Outcome y(space.trial_count(), 0);
        for (std::size_t t = 0; t < key.witness.size(); ++t)
            y[static_cast<std::size_t>(key.witness[t])] = key.values[t];

        std::vector<int> counter(free_trials.size(), 0);
        for (;;) {
            for (std::size_t t = 0; t < free_trials.size(); ++t)
                y[static_cast<std::size_t>(free_trials[t])] = counter[t];
            if (!ws.exceptional(y) && !(ws.indicators(y) & (1u << key.indicator))) {
                check.issue = "witness property fails for indicator " +
                              std::to_string(key.indicator);
                return check;
            }
            std::size_t t = free_trials.size();
            while (t > 0) {
                --t;
                const auto limit =
                    static_cast<int>(space.supports[static_cast<std::size_t>(free_trials[t])].size());
                if (counter[t] + 1 < limit) {
                    ++counter[t];
                    std::fill(counter.begin() + static_cast<long>(t) + 1, counter.end(), 0);
                    t = free_trials.size() + 1;
                    break;
                }
            }
            if (t == free_trials.size() + 1) continue;
            break;
        }
    }
    check.ok = true;
    return check;
}

RDistribution compute_r_distribution(const ProductSpace& space, const WitnessStructure& ws) {
    RDistribution dist;
    dist.mass.assign(static_cast<std::size_t>(ws.n) + 1, 0.0);
    for_each_outcome(space, [&](const Outcome& x, double p) {
        const auto r = static_cast<std::size_t>(std::popcount(ws.indicators(x)));
        dist.mass[r] += p;
        dist.total_mass += p;
        if (ws.exceptional(x)) {
            dist.pr_exceptional += p;
            dist.sup_r_exceptional = std::max(dist.sup_r_exceptional, static_cast<double>(r));
        }
    });
    for (std::size_t r = 0; r < dist.mass.size(); ++r)
        dist.expectation += static_cast<double>(r) * dist.mass[r];
    return dist;
}

double exact_tail(const ProductSpace& space, const WitnessStructure& ws, double tau) {
    const RDistribution dist = compute_r_distribution(space, ws);
    double tail = 0;
    for (std::size_t r = 0; r < dist.mass.size(); ++r)
        if (std::abs(static_cast<double>(r) - dist.expectation) >= tau) tail += dist.mass[r];
    return tail;
}

double mahdian_exceptional_bound(double beta, double D, double tau, double pr_exceptional) {
    if (beta <= 0 || D <= 0) throw std::invalid_argument("beta and D must be positive");
    return 6.0 * std::exp(-tau * tau / (24.0 * beta * D)) + pr_exceptional;
}

bool threshold_ok(double tau, double beta, double D, double pr_exceptional,
                  double sup_r_exceptional) {
    return tau >= 12.0 * std::sqrt(std::numbers::pi * beta * D) +
                      2.0 * pr_exceptional * sup_r_exceptional;
}

InequalityReport verify_inequality(const ProductSpace& space, const WitnessStructure& ws,
                                   const std::vector<double>& tau_grid) {
    InequalityReport report;
    const StructureCheck check = verify_witness_structure(space, ws);
    if (!check.ok) {
        report.issue = check.issue;
        return report;
    }
    if (check.pr_exceptional > 1.0 / 6.0 + 1e-12) {
        report.issue = "Pr(exceptional) = " + std::to_string(check.pr_exceptional) + " > 1/6";
        return report;
    }
    report.structure_ok = true;

    const RDistribution dist = compute_r_distribution(space, ws);
    for (double tau : tau_grid) {
        if (!threshold_ok(tau, ws.beta, ws.D, dist.pr_exceptional, dist.sup_r_exceptional)) {
            ++report.out_of_regime;
            continue;
        }
        double tail = 0;
        for (std::size_t r = 0; r < dist.mass.size(); ++r)
            if (std::abs(static_cast<double>(r) - dist.expectation) >= tau) tail += dist.mass[r];
        const double bound =
            mahdian_exceptional_bound(ws.beta, ws.D, tau, dist.pr_exceptional);
        ++report.checked;
        if (tail > bound) report.violation_taus.push_back(tau);
    }
    return report;
}

double directional_distance(const Outcome& x, const std::vector<Outcome>& a_set,
                            const std::vector<double>& a) {
    if (a_set.empty()) throw std::invalid_argument("event A must be nonempty");
    if (a.size() != x.size()) throw std::invalid_argument("direction arity mismatch");
    for (const Outcome& y : a_set)
        if (y.size() != x.size()) throw std::invalid_argument("outcome arity mismatch");
    double norm = 0;
    for (double ai : a) norm += ai * ai;
    norm = std::sqrt(norm);
    if (norm == 0) throw std::invalid_argument("direction must be nonzero");
    double best = std::numeric_limits<double>::infinity();
    for (const Outcome& y : a_set) {
        double dot = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != y[i]) dot += a[i];
        best = std::min(best, dot);
    }
    return best / norm;
}

double convex_distance(const Outcome& x, const std::vector<Outcome>& a_set, double tol) {
    if (a_set.empty()) throw std::invalid_argument("event A must be nonempty");
    const std::size_t m = x.size();
    if (m > 24) throw std::length_error("convex_distance capped at m <= 24 coordinates");
    // distinct disagreement patterns chi(x, y)
    std::unordered_set<std::uint32_t> masks;
    for (const Outcome& y : a_set) {
        if (y.size() != m) throw std::invalid_argument("outcome arity mismatch");
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (x[i] != y[i]) mask |= (1u << i);
        if (mask == 0) return 0.0;  // x itself lies in A
        masks.insert(mask);
    }
    std::vector<std::vector<double>> points;
    points.reserve(masks.size());
    for (std::uint32_t mask : masks) {
        std::vector<double> p(m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (1u << i)) p[i] = 1.0;
        points.push_back(std::move(p));
    }
    return min_norm_point(points, tol);
}

TalagrandReport verify_talagrand(const ProductSpace& space,
                                 const std::function<bool(const Outcome&)>& in_a,
                                 const std::function<bool(const Outcome&)>& in_b) {
    TalagrandReport rep;
    std::vector<Outcome> a_set, b_set;
    for_each_outcome(space, [&](const Outcome& x, double p) {
        if (in_a(x)) {
            rep.pr_a += p;
            a_set.push_back(x);
        }
        if (in_b(x)) {
            rep.pr_b += p;
            b_set.push_back(x);
        }
    });
    rep.a_size = a_set.size();
    rep.b_size = b_set.size();
    if (a_set.empty() || b_set.empty())
        throw std::invalid_argument("verify_talagrand requires nonempty events");

    // dist(A,B) = dist(B,A); iterate over the smaller event
    const auto& outer = a_set.size() <= b_set.size() ? b_set : a_set;
    const auto& inner = a_set.size() <= b_set.size() ? a_set : b_set;
    double dist = std::numeric_limits<double>::infinity();
    for (const Outcome& y : outer) dist = std::min(dist, convex_distance(y, inner));
    rep.dist = dist;
    rep.bound = std::exp(-dist * dist / 4.0);
    rep.holds = rep.pr_a * rep.pr_b < rep.bound;
    return rep;
}

double chernoff_bound(double mu, double delta) {
    if (mu <= 0 || delta <= 0) throw std::invalid_argument("mu and delta must be positive");
    return std::exp(-delta * delta * mu / (2.0 + delta));
}

bool lll_ok(double p, double d_lll) { return 4.0 * p * d_lll <= 1.0; }

double kst_bound(double m, double n, int s, int t) {
    if (m < 1 || n < 1 || s < 1 || t < 1)
        throw std::invalid_argument("kst_bound arguments must be >= 1");
    return std::pow(static_cast<double>(t - 1), 1.0 / s) * n *
               std::pow(m, 1.0 - 1.0 / s) +
           static_cast<double>(s - 1) * m;
}

}  // namespace nibble
