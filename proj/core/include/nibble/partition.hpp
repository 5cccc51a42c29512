#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nibble/graph.hpp"
#include "nibble/nibble_driver.hpp"

namespace nibble {

struct PartitionSchedule {
    double delta = 0;  // d_1
    double zeta = 0;
    double epsilon = 0;
    int s = 2;
    std::size_t k = 1;       // part count, power of two
    std::size_t i_star = 1;  // log2(k) + 1
    std::vector<double> d_seq;  // d_1 .. d_{i*}
    std::vector<double> t_seq;  // t_1 .. t_{i*}
    std::vector<bool> t_sqrt_ok;  // t_i > sqrt(d_i)
    bool feasible = true;         // every t_sqrt_ok flag holds
};

/// k is the smallest power of 2 with Delta/k <= exp((1 - eps/4) * zeta^{-1/16s});
/// d_{i+1} = d_i/2 + d_i^{2/3}, t_{i+1} = t_i/2 + t_i^{2/3}.
PartitionSchedule build_schedule(double delta, double zeta, double epsilon, int s);

struct BipartitionResult {
    bool ok = false;
    std::vector<Vertex> s1, s2;
    std::size_t resamples = 0;
    std::vector<std::string> surviving_events;  // on failure
};

/// Split V into S1/S2 so each induced part has max degree <= d/2 + d^{2/3}
/// and max s-codegree <= t/2 + t^{2/3}; uniform assignment plus resampling of
/// each violated event's dependency neighborhood, events scanned in a fixed
/// lexicographic order.
BipartitionResult random_bipartition(const Graph& g, int s, double d, double t,
                                     std::uint64_t seed, std::size_t max_retries);

/// Trace hook for partitioned runs: (part index, report, trace, round-input
/// id -> id in the original graph).
using PartTraceSink = std::function<void(std::size_t, const RoundReport&, const OutcomeTrace&,
                                         const std::vector<Vertex>&)>;

struct WeakVuOptions {
    double epsilon = 0.1;
    std::size_t bipartition_retries = 200;
    std::size_t max_retries_per_round = 8;
    double eta_override = 0.1;
    PartTraceSink trace_sink;
};

struct WeakVuResult {
    bool ok = false;
    PartialColoring phi;  // total on success
    PartitionSchedule schedule;
    std::size_t parts = 0;
    std::vector<std::size_t> palette_sizes;
    std::size_t palette_total = 0;
    std::size_t colors_used = 0;
    std::string message;
};

/// Halve the graph i*-1 times via random_bipartition, then color every part
/// with the nibble driver + finisher on its own disjoint palette.
WeakVuResult weak_vu_pipeline(const Graph& g, double zeta, double epsilon, int s,
                              std::uint64_t seed, const WeakVuOptions& opts = {});

}  // namespace nibble
