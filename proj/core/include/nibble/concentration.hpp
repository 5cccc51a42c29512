#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nibble/graph.hpp"

namespace nibble {

/// Finite product space: trial j takes value in {0..supports[j].size()-1}
/// with the given probabilities.
struct ProductSpace {
    std::vector<std::vector<double>> supports;

    std::size_t trial_count() const { return supports.size(); }
    std::size_t outcome_count() const;
    static ProductSpace fair_coins(std::size_t m);
    /// per-trial probabilities must sum to 1 (1e-12) and the outcome count
    /// must stay enumerable (<= 2^24); throws otherwise
    void validate() const;
};

/// Visit every outcome with its probability. The outcome vector is reused.
void for_each_outcome(const ProductSpace& space,
                      const std::function<void(const std::vector<int>&, double)>& fn);

using Outcome = std::vector<int>;

struct WitnessStructure {
    int n = 0;  // indicator count, <= 31
    /// bit i of the result = R_i(x)
    std::function<std::uint32_t(const Outcome&)> indicators;
    /// W_i(x): witnessing trial indices; queried only when R_i(x) = 1
    std::function<std::vector<int>(const Outcome&, int)> witness;
    std::function<bool(const Outcome&)> exceptional;
    double beta = 0;
    double D = 0;
};

struct StructureCheck {
    bool ok = false;
    std::string issue;
    double pr_exceptional = 0;
    double sup_r_exceptional = 0;  // sup of R over exceptional outcomes
    double total_mass = 0;
};

/// Exhaustively verify the witness property, the per-trial witness load
/// (beta) and the total witness size (D) on every non-exceptional outcome.
StructureCheck verify_witness_structure(const ProductSpace& space, const WitnessStructure& ws);

struct RDistribution {
    std::vector<double> mass;  // indexed by R value
    double expectation = 0;
    double pr_exceptional = 0;
    double sup_r_exceptional = 0;
    double total_mass = 0;
};
RDistribution compute_r_distribution(const ProductSpace& space, const WitnessStructure& ws);

/// Exact Pr(|R - E[R]| >= tau) by full enumeration.
double exact_tail(const ProductSpace& space, const WitnessStructure& ws, double tau);

/// 6 exp(-tau^2 / (24 beta D)) + Pr(exceptional)
double mahdian_exceptional_bound(double beta, double D, double tau, double pr_exceptional);

/// tau >= 12 sqrt(pi beta D) + 2 Pr(exceptional) sup R
bool threshold_ok(double tau, double beta, double D, double pr_exceptional,
                  double sup_r_exceptional);

struct InequalityReport {
    bool structure_ok = false;
    std::string issue;
    std::size_t checked = 0;
    std::size_t out_of_regime = 0;
    std::vector<double> violation_taus;
    bool violations() const { return !violation_taus.empty(); }
};

/// For every in-regime tau on the grid check exact_tail <= bound; the
/// witness-structure invariants are verified first and Pr(exceptional) must
/// be <= 1/6.
InequalityReport verify_inequality(const ProductSpace& space, const WitnessStructure& ws,
                                   const std::vector<double>& tau_grid);

/// Talagrand convex distance dist(x, A): the norm of the minimum-norm point
/// of conv{chi(x,y) : y in A}, chi_i = [x_i != y_i]; equals the sup over
/// directions by minimax duality. A must be nonempty.
double convex_distance(const Outcome& x, const std::vector<Outcome>& a_set, double tol = 1e-9);

/// dist_a(x, A) for one direction (nonzero a): min_y sum_{x_i != y_i} a_i / |a|.
double directional_distance(const Outcome& x, const std::vector<Outcome>& a_set,
                            const std::vector<double>& a);

struct TalagrandReport {
    double pr_a = 0, pr_b = 0;
    double dist = 0;
    double bound = 0;  // exp(-dist^2/4)
    bool holds = false;
    std::size_t a_size = 0, b_size = 0;
};

/// Pr(A) Pr(B) < exp(-dist(A,B)^2 / 4) with dist computed as the infimum of
/// convex_distance over the smaller event.
TalagrandReport verify_talagrand(const ProductSpace& space,
                                 const std::function<bool(const Outcome&)>& in_a,
                                 const std::function<bool(const Outcome&)>& in_b);

// ---- section-2 tools -------------------------------------------------------

/// exp(-delta^2 mu / (2 + delta))
double chernoff_bound(double mu, double delta);

/// 4 p d_lll <= 1
bool lll_ok(double p, double d_lll);

/// (t-1)^{1/s} n m^{1-1/s} + (s-1) m
double kst_bound(double m, double n, int s, int t);

/// Minimum-norm point of the convex hull of a finite point set (Wolfe).
double min_norm_point(const std::vector<std::vector<double>>& points, double tol = 1e-9);

}  // namespace nibble
