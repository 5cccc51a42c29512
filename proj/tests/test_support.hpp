#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "nibble/generators.hpp"
#include "nibble/graph.hpp"
#include "nibble/rng.hpp"

namespace nibble::test {

// Independent brute-force oracles. These deliberately avoid the library's
// adjacency/list helpers beyond raw accessors.

inline std::size_t oracle_color_degree(const Graph& g, const ListAssignment& l, Vertex v,
                                       Color c) {
    std::size_t count = 0;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (u == v || !g.has_edge(v, u)) continue;
        const auto& lu = l.list(u);
        if (std::find(lu.begin(), lu.end(), c) != lu.end()) ++count;
    }
    return count;
}

inline std::size_t oracle_s_codegree(const Graph& g, const ListAssignment& l,
                                     const std::vector<Vertex>& vs, Color c) {
    std::size_t count = 0;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        bool common = true;
        for (Vertex v : vs)
            if (u == v || !g.has_edge(v, u)) {
                common = false;
                break;
            }
        if (!common) continue;
        const auto& lu = l.list(u);
        if (std::find(lu.begin(), lu.end(), c) != lu.end()) ++count;
    }
    return count;
}

// exhaustive max metrics over every s-subset of vertices (triple loop style)
struct OracleMetrics {
    std::size_t max_color_degree = 0;
    std::size_t max_s_codegree = 0;
    std::size_t min_list = 0;
};

inline OracleMetrics oracle_max_metrics(const Graph& g, const ListAssignment& l, int s) {
    OracleMetrics m;
    m.min_list = l.vertex_count() ? l.list(0).size() : 0;
    for (Vertex v = 0; v < l.vertex_count(); ++v)
        m.min_list = std::min(m.min_list, l.list(v).size());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (Color c : l.list(v))
            m.max_color_degree = std::max(m.max_color_degree, oracle_color_degree(g, l, v, c));

    const std::size_t n = g.vertex_count();
    std::vector<Vertex> tuple(static_cast<std::size_t>(s));
    std::vector<std::size_t> idx(static_cast<std::size_t>(s));
    if (n < static_cast<std::size_t>(s)) return m;
    for (int i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
        for (int i = 0; i < s; ++i) tuple[i] = static_cast<Vertex>(idx[i]);
        // colors shared by every list of the tuple
        std::vector<Color> shared = l.list(tuple[0]);
        for (int i = 1; i < s; ++i) {
            std::vector<Color> next;
            for (Color c : shared) {
                const auto& li = l.list(tuple[i]);
                if (std::find(li.begin(), li.end(), c) != li.end()) next.push_back(c);
            }
            shared.swap(next);
        }
        for (Color c : shared)
            m.max_s_codegree = std::max(m.max_s_codegree, oracle_s_codegree(g, l, tuple, c));
        int i = s - 1;
        while (i >= 0 && idx[i] == n - static_cast<std::size_t>(s - i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    return m;
}

inline ListAssignment same_list_everywhere(std::size_t n, std::vector<Color> colors) {
    std::vector<std::vector<Color>> lists(n, colors);
    return ListAssignment(std::move(lists));
}

inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
    GenSpec spec;
    spec.family = GenSpec::Family::gnp;
    spec.n = n;
    spec.target_degree = p * static_cast<double>(n - 1);
    spec.seed = seed;
    return generate(spec).graph;
}

// Independent simplex solver (Frank-Wolfe plus an active-set polish), used to
// derive a near-optimal direction for sup-definition lower bounds on the
// convex distance.
inline std::vector<double> fw_polished_min_norm(const std::vector<std::vector<double>>& pts,
                                                int iters) {
    const std::size_t k = pts.size(), m = pts[0].size();
    std::vector<double> lam(k, 1.0 / static_cast<double>(k));
    std::vector<double> z(m), grad(k);
    auto recombine = [&](const std::vector<double>& weights) {
        std::fill(z.begin(), z.end(), 0.0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t c = 0; c < m; ++c) z[c] += weights[i] * pts[i][c];
    };
    for (int it = 0; it < iters; ++it) {
        recombine(lam);
        for (std::size_t i = 0; i < k; ++i) {
            grad[i] = 0;
            for (std::size_t c = 0; c < m; ++c) grad[i] += 2.0 * z[c] * pts[i][c];
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i < k; ++i)
            if (grad[i] < grad[best]) best = i;
        std::vector<double> dir(m);
        for (std::size_t c = 0; c < m; ++c) dir[c] = pts[best][c] - z[c];
        double num = 0, den = 0;
        for (std::size_t c = 0; c < m; ++c) {
            num += -z[c] * dir[c];
            den += dir[c] * dir[c];
        }
        double gamma = den > 0 ? std::clamp(num / den, 0.0, 1.0) : 0.0;
        for (std::size_t i = 0; i < k; ++i) lam[i] *= (1.0 - gamma);
        lam[best] += gamma;
    }

    // polish: exact affine solve over the support, dropping negatives
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < k; ++i)
        if (lam[i] > 1e-7) support.push_back(i);
    for (int round = 0; round < 24 && !support.empty(); ++round) {
        const std::size_t s = support.size();
        std::vector<std::vector<double>> a(s + 1, std::vector<double>(s + 2, 0.0));
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = 0; j < s; ++j) {
                double g = 0;
                for (std::size_t c = 0; c < m; ++c) g += pts[support[i]][c] * pts[support[j]][c];
                a[i][j] = g;
            }
            a[i][i] += 1e-13;
            a[i][s] = 1.0;
        }
        for (std::size_t j = 0; j < s; ++j) a[s][j] = 1.0;
        a[s][s + 1] = 1.0;
        for (std::size_t col = 0; col <= s; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r <= s; ++r)
                if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
            std::swap(a[col], a[piv]);
            if (std::abs(a[col][col]) < 1e-14) continue;
            for (std::size_t r = 0; r <= s; ++r) {
                if (r == col) continue;
                const double f = a[r][col] / a[col][col];
                for (std::size_t c2 = col; c2 <= s + 1; ++c2) a[r][c2] -= f * a[col][c2];
            }
        }
        std::vector<double> alpha(s, 0.0);
        double worst = 0;
        std::size_t worst_at = s;
        for (std::size_t i = 0; i < s; ++i) {
            alpha[i] = std::abs(a[i][i]) < 1e-14 ? 0.0 : a[i][s + 1] / a[i][i];
            if (alpha[i] < worst) {
                worst = alpha[i];
                worst_at = i;
            }
        }
        if (worst_at == s) {
            std::fill(lam.begin(), lam.end(), 0.0);
            for (std::size_t i = 0; i < s; ++i) lam[support[i]] = alpha[i];
            break;
        }
        support.erase(support.begin() + static_cast<long>(worst_at));
    }
    recombine(lam);
    return z;
}

}  // namespace nibble::test
