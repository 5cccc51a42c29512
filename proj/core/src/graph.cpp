#include "nibble/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace nibble {

namespace {

std::string vertex_str(Vertex v) { return std::to_string(v); }

}  // namespace

Graph::Graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    adj_.resize(n);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::invalid_argument("edge (" + vertex_str(u) + "," + vertex_str(v) +
                                        ") out of range for n=" + std::to_string(n));
        if (u == v) throw std::invalid_argument("loop at vertex " + vertex_str(u));
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto& nb = adj_[v];
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw std::invalid_argument("multi-edge at vertex " + std::to_string(v));
    }
    edge_count_ = edges.size();
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
    if (v >= adj_.size()) throw std::invalid_argument("invalid vertex id " + vertex_str(v));
    return adj_[v];
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    const auto& nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (const auto& nb : adj_) best = std::max(best, nb.size());
    return best;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < adj_.size(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::induced(const std::vector<Vertex>& keep, std::vector<Vertex>* original_ids) const {
    std::vector<Vertex> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::unordered_map<Vertex, Vertex> remap;
    remap.reserve(sorted.size());
    for (Vertex i = 0; i < sorted.size(); ++i) remap[sorted[i]] = i;

    std::vector<std::pair<Vertex, Vertex>> sub_edges;
    for (Vertex old_u : sorted) {
        for (Vertex old_v : neighbors(old_u)) {
            if (old_u < old_v) {
                auto it = remap.find(old_v);
                if (it != remap.end()) sub_edges.emplace_back(remap[old_u], it->second);
            }
        }
    }
    if (original_ids) *original_ids = sorted;
    return Graph(sorted.size(), sub_edges);
}

ListAssignment::ListAssignment(std::vector<std::vector<Color>> lists) : lists_(std::move(lists)) {
    for (std::size_t v = 0; v < lists_.size(); ++v) {
        auto& l = lists_[v];
        std::sort(l.begin(), l.end());
        if (!l.empty() && l.front() <= 0)
            throw std::invalid_argument("non-positive color in list of vertex " + std::to_string(v));
        if (std::adjacent_find(l.begin(), l.end()) != l.end())
            throw std::invalid_argument("duplicate color in list of vertex " + std::to_string(v));
    }
}

const std::vector<Color>& ListAssignment::list(Vertex v) const {
    if (v >= lists_.size()) throw std::invalid_argument("invalid vertex id " + std::to_string(v));
    return lists_[v];
}

bool ListAssignment::contains(Vertex v, Color c) const {
    const auto& l = list(v);
    return std::binary_search(l.begin(), l.end(), c);
}

std::size_t ListAssignment::min_list_size() const {
    std::size_t best = lists_.empty() ? 0 : lists_[0].size();
    for (const auto& l : lists_) best = std::min(best, l.size());
    return best;
}

std::size_t ListAssignment::max_list_size() const {
    std::size_t best = 0;
    for (const auto& l : lists_) best = std::max(best, l.size());
    return best;
}

ListAssignment ListAssignment::restricted_to(const std::vector<Vertex>& keep) const {
    std::vector<Vertex> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::vector<Color>> out;
    out.reserve(sorted.size());
    for (Vertex v : sorted) out.push_back(list(v));
    return ListAssignment(std::move(out));
}

void PartialColoring::set(Vertex v, Color c) {
    if (c <= 0) throw std::invalid_argument("color must be positive");
    Color& slot = assign_.at(v);
    if (slot == 0) ++assigned_;
    slot = c;
}

void PartialColoring::unset(Vertex v) {
    Color& slot = assign_.at(v);
    if (slot != 0) --assigned_;
    slot = 0;
}

std::vector<Vertex> PartialColoring::domain() const {
    std::vector<Vertex> out;
    out.reserve(assigned_);
    for (Vertex v = 0; v < assign_.size(); ++v)
        if (assign_[v] != 0) out.push_back(v);
    return out;
}

PairParams PairParams::make(double d, int ell, int s, double eta) {
    if (s < 2) throw std::invalid_argument("codegree arity s must be >= 2");
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
    PairParams p;
    p.d = d;
    p.ell = ell;
    p.s = s;
    p.eta = eta;
    p.codegree_exponent = 16.0 * s;
    return p;
}

double PairParams::codegree_bound() const {
    if (d <= 1.0) return 0.0;
    const double b = d / std::pow(std::log(d), codegree_exponent);
    return (std::isfinite(b) && b > 0.0) ? b : 0.0;
}

std::size_t color_degree(const Graph& g, const ListAssignment& l, Vertex v, Color c) {
    std::size_t count = 0;
    for (Vertex u : g.neighbors(v))
        if (l.contains(u, c)) ++count;
    return count;
}

std::size_t s_color_codegree(const Graph& g, const ListAssignment& l,
                             std::span<const Vertex> vs, Color c) {
    std::size_t count = 0;
    for (Vertex u : common_neighbors(g, vs))
        if (l.contains(u, c)) ++count;
    return count;
}

std::vector<Vertex> common_neighbors(const Graph& g, std::span<const Vertex> vs) {
    if (vs.empty()) return {};
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (vs[i] == vs[j])
                throw std::invalid_argument("repeated vertex " + std::to_string(vs[i]) +
                                            " in tuple");
    std::vector<Vertex> acc = g.neighbors(vs[0]);
    std::vector<Vertex> tmp;
    for (std::size_t i = 1; i < vs.size() && !acc.empty(); ++i) {
        const auto& nb = g.neighbors(vs[i]);
        tmp.clear();
        std::set_intersection(acc.begin(), acc.end(), nb.begin(), nb.end(),
                              std::back_inserter(tmp));
        acc.swap(tmp);
    }
    return acc;
}

namespace {

// exact 64-bit packing of sorted tuples; fits s<=2 at any desk n, s=3 below
// 2^21 vertices, s=4 below 2^16
bool tuple_packable(int s, std::size_t n) {
    if (s <= 2) return true;
    if (s == 3) return n < (std::size_t{1} << 21);
    if (s == 4) return n < (std::size_t{1} << 16);
    return false;
}

std::uint64_t pack_tuple(const std::vector<Vertex>& t) {
    const int bits = t.size() <= 2 ? 32 : (t.size() == 3 ? 21 : 16);
    std::uint64_t key = 0;
    for (Vertex v : t) key = (key << bits) | v;
    return key;
}

template <typename Fn>
void for_each_neighborhood_subset(const Graph& g, int s, Fn&& fn) {
    std::vector<Vertex> tuple(static_cast<std::size_t>(s));
    std::vector<std::size_t> idx(static_cast<std::size_t>(s));
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        const auto& nb = g.neighbors(u);
        if (nb.size() < static_cast<std::size_t>(s)) continue;
        for (int i = 0; i < s; ++i) idx[i] = i;
        for (;;) {
            for (int i = 0; i < s; ++i) tuple[i] = nb[idx[i]];
            fn(tuple);
            int i = s - 1;
            while (i >= 0 && idx[i] == nb.size() - static_cast<std::size_t>(s - i)) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
}

}  // namespace

std::vector<std::vector<Vertex>> tuples_with_common_neighbor(const Graph& g, int s) {
    if (s < 1) throw std::invalid_argument("s must be >= 1");
    std::vector<std::vector<Vertex>> out;
    if (tuple_packable(s, g.vertex_count())) {
        std::unordered_set<std::uint64_t> seen;
        for_each_neighborhood_subset(g, s, [&](const std::vector<Vertex>& tuple) {
            if (seen.insert(pack_tuple(tuple)).second) out.push_back(tuple);
        });
    } else {
        std::unordered_set<std::string> seen;
        for_each_neighborhood_subset(g, s, [&](const std::vector<Vertex>& tuple) {
            std::string key(reinterpret_cast<const char*>(tuple.data()),
                            tuple.size() * sizeof(Vertex));
            if (seen.insert(std::move(key)).second) out.push_back(tuple);
        });
    }
    return out;
}

std::vector<std::pair<std::vector<Vertex>, std::size_t>> tuples_by_codegree(const Graph& g,
                                                                            int s) {
    if (s < 1) throw std::invalid_argument("s must be >= 1");
    std::vector<std::pair<std::vector<Vertex>, std::size_t>> out;
    const std::size_t n = g.vertex_count();
    if (s == 2 && n > 1 && n * n <= (std::size_t{1} << 26)) {
        // flat pair-count array: one increment per wedge
        std::vector<std::uint32_t> counts(n * n, 0);
        for (Vertex u = 0; u < n; ++u) {
            const auto& nb = g.neighbors(u);
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j)
                    ++counts[static_cast<std::size_t>(nb[i]) * n + nb[j]];
        }
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b) {
                const auto c = counts[static_cast<std::size_t>(a) * n + b];
                if (c > 0) out.emplace_back(std::vector<Vertex>{a, b}, c);
            }
        return out;
    }
    if (tuple_packable(s, g.vertex_count())) {
        std::unordered_map<std::uint64_t, std::uint32_t> counts;
        for_each_neighborhood_subset(g, s, [&](const std::vector<Vertex>& tuple) {
            auto [it, fresh] = counts.try_emplace(pack_tuple(tuple), 0);
            ++it->second;
            if (fresh) out.emplace_back(tuple, 0);
        });
        for (auto& [tuple, codegree] : out) codegree = counts[pack_tuple(tuple)];
    } else {
        for (const auto& tuple : tuples_with_common_neighbor(g, s))
            out.emplace_back(tuple, common_neighbors(g, tuple).size());
    }
    return out;
}

std::size_t max_graph_s_codegree(const Graph& g, int s) {
    std::size_t best = 0;
    for (const auto& [tuple, codegree] : tuples_by_codegree(g, s))
        best = std::max(best, codegree);
    return best;
}

std::vector<std::vector<std::uint32_t>> color_degree_table(const Graph& g,
                                                           const ListAssignment& l) {
    const std::size_t n = g.vertex_count();
    Color max_color = 0;
    for (Vertex v = 0; v < l.vertex_count(); ++v)
        if (!l.list(v).empty()) max_color = std::max(max_color, l.list(v).back());

    std::vector<std::uint32_t> counts(static_cast<std::size_t>(max_color) + 1, 0);
    std::vector<Color> touched;
    std::vector<std::vector<std::uint32_t>> table(n);
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex u : g.neighbors(v))
            for (Color c : l.list(u)) {
                if (counts[static_cast<std::size_t>(c)]++ == 0) touched.push_back(c);
            }
        const auto& lv = l.list(v);
        table[v].resize(lv.size());
        for (std::size_t i = 0; i < lv.size(); ++i)
            table[v][i] = counts[static_cast<std::size_t>(lv[i])];
        for (Color c : touched) counts[static_cast<std::size_t>(c)] = 0;
        touched.clear();
    }
    return table;
}

MaxMetrics max_metrics(const Graph& g, const ListAssignment& l, int s) {
    MaxMetrics m;
    m.min_list_size = l.min_list_size();

    for (const auto& row : color_degree_table(g, l))
        for (std::uint32_t c : row) m.max_color_degree = std::max<std::size_t>(m.max_color_degree, c);

    // tuples sorted by decreasing plain codegree: once the codegree drops to
    // the best color count found, no remaining tuple can improve it
    auto tuples = tuples_by_codegree(g, s);
    std::sort(tuples.begin(), tuples.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<Color> shared, tmp;
    for (const auto& [tuple, codegree] : tuples) {
        if (codegree <= m.max_s_codegree) break;
        shared = l.list(tuple[0]);
        for (std::size_t i = 1; i < tuple.size() && !shared.empty(); ++i) {
            const auto& li = l.list(tuple[i]);
            tmp.clear();
            std::set_intersection(shared.begin(), shared.end(), li.begin(), li.end(),
                                  std::back_inserter(tmp));
            shared.swap(tmp);
        }
        if (shared.empty()) continue;
        const auto cn = common_neighbors(g, tuple);
        for (Color c : shared) {
            std::size_t count = 0;
            for (Vertex u : cn)
                if (l.contains(u, c)) ++count;
            m.max_s_codegree = std::max(m.max_s_codegree, count);
        }
    }
    return m;
}

std::pair<Graph, ListAssignment> preprocess(const Graph& g, const ListAssignment& l, int ell) {
    if (ell < 0) throw std::invalid_argument("ell must be nonnegative");
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<Color>> trimmed(n);
    for (Vertex v = 0; v < n; ++v) {
        const auto& lv = l.list(v);
        if (lv.size() < static_cast<std::size_t>(ell))
            throw std::invalid_argument("list of vertex " + std::to_string(v) + " has " +
                                        std::to_string(lv.size()) + " colors, need " +
                                        std::to_string(ell));
        trimmed[v].assign(lv.begin(), lv.begin() + ell);  // lists are sorted: keep smallest
    }
    ListAssignment lt(std::move(trimmed));

    std::vector<std::pair<Vertex, Vertex>> kept;
    for (const auto& [u, v] : g.edges()) {
        const auto& lu = lt.list(u);
        const auto& lv = lt.list(v);
        bool intersects = false;
        std::size_t i = 0, j = 0;
        while (i < lu.size() && j < lv.size()) {
            if (lu[i] == lv[j]) { intersects = true; break; }
            if (lu[i] < lv[j]) ++i; else ++j;
        }
        if (intersects) kept.emplace_back(u, v);
    }
    return {Graph(n, kept), std::move(lt)};
}

PairReport validate_pair(const Graph& g, const ListAssignment& l, const PairParams& p,
                         bool strict) {
    PairReport r;
    auto note = [&](bool hard, std::string msg) {
        (hard ? r.violations : r.warnings).push_back(std::move(msg));
    };

    if (g.vertex_count() != l.vertex_count())
        note(true, "graph has " + std::to_string(g.vertex_count()) + " vertices but lists cover " +
                       std::to_string(l.vertex_count()));

    if (!(4.0 * p.eta * p.d < p.ell))
        note(true, "4*eta*d < ell fails: 4*" + std::to_string(p.eta) + "*" + std::to_string(p.d) +
                       " >= " + std::to_string(p.ell));
    if (!(p.ell < 8.0 * p.d))
        note(true, "ell < 8d fails: " + std::to_string(p.ell) + " >= 8*" + std::to_string(p.d));

    const double logd = p.d > 1.0 ? std::log(p.d) : 0.0;
    const bool eta_ok = logd > 0.0 && p.eta > 1.0 / (logd * logd) && p.eta < 1.0 / (4.0 * logd);
    if (!eta_ok)
        note(strict, "eta window 1/log^2 d < eta < 1/(4 log d) fails for eta=" +
                         std::to_string(p.eta) + ", d=" + std::to_string(p.d));

    const std::size_t n = std::min<std::size_t>(g.vertex_count(), l.vertex_count());
    for (Vertex v = 0; v < n; ++v) {
        if (l.list(v).size() != static_cast<std::size_t>(p.ell)) {
            note(true, "|L(" + std::to_string(v) + ")| = " + std::to_string(l.list(v).size()) +
                           " != ell = " + std::to_string(p.ell));
            break;  // one witness is enough
        }
    }

    {
        const auto cd = color_degree_table(g, l);
        bool reported = false;
        for (Vertex v = 0; v < n && !reported; ++v) {
            const auto& lv = l.list(v);
            for (std::size_t i = 0; i < lv.size(); ++i) {
                if (static_cast<double>(cd[v][i]) > p.d) {
                    note(true, "color-degree d_L(" + std::to_string(v) + "," +
                                   std::to_string(lv[i]) + ") = " + std::to_string(cd[v][i]) +
                                   " exceeds d = " + std::to_string(p.d));
                    reported = true;
                    break;
                }
            }
        }
    }

    const double cod_bound = p.codegree_bound();
    {
        std::vector<Color> shared, tmp;
        bool reported = false;
        for (const auto& tuple : tuples_with_common_neighbor(g, p.s)) {
            if (reported) break;
            shared = l.list(tuple[0]);
            for (std::size_t i = 1; i < tuple.size() && !shared.empty(); ++i) {
                const auto& li = l.list(tuple[i]);
                tmp.clear();
                std::set_intersection(shared.begin(), shared.end(), li.begin(), li.end(),
                                      std::back_inserter(tmp));
                shared.swap(tmp);
            }
            if (shared.empty()) continue;
            for (Color c : shared) {
                const std::size_t cd = s_color_codegree(g, l, tuple, c);
                if (static_cast<double>(cd) > cod_bound) {
                    std::string who;
                    for (Vertex v : tuple) who += std::to_string(v) + " ";
                    note(strict, "s-color-codegree at tuple ( " + who + ") color " +
                                     std::to_string(c) + " is " + std::to_string(cd) +
                                     " > d/log^" + std::to_string(p.codegree_exponent) +
                                     " d = " + std::to_string(cod_bound));
                    reported = true;
                    break;
                }
            }
        }
    }

    for (const auto& [u, v] : g.edges()) {
        const auto& lu = l.list(u);
        const auto& lv = l.list(v);
        std::vector<Color> inter;
        std::set_intersection(lu.begin(), lu.end(), lv.begin(), lv.end(),
                              std::back_inserter(inter));
        if (inter.empty()) {
            note(true, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                           ") has disjoint lists");
            break;
        }
    }
    return r;
}

bool is_proper(const Graph& g, const PartialColoring& phi) {
    return conflicting_edges(g, phi).empty();
}

bool is_proper(const Graph& g, const ListAssignment& l, const PartialColoring& phi) {
    if (!is_proper(g, phi)) return false;
    for (Vertex v = 0; v < phi.vertex_count(); ++v)
        if (phi.has(v) && !l.contains(v, phi.color(v))) return false;
    return true;
}

std::vector<std::pair<Vertex, Vertex>> conflicting_edges(const Graph& g,
                                                         const PartialColoring& phi) {
    std::vector<std::pair<Vertex, Vertex>> bad;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (!phi.has(u)) continue;
        for (Vertex v : g.neighbors(u))
            if (u < v && phi.has(v) && phi.color(u) == phi.color(v)) bad.emplace_back(u, v);
    }
    return bad;
}

}  // namespace nibble
