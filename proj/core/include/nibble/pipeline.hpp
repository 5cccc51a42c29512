#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nibble/finisher.hpp"
#include "nibble/graph.hpp"
#include "nibble/nibble_driver.hpp"

namespace nibble {

struct PipelineOptions {
    double epsilon = 0.1;
    int s = 2;
    /// strict = analysis schedule derived from eps alone; refuses when (C1)-(C3) fail.
    bool strict = false;
    /// Desk-scale override: explicit eta plus measured ell_1/d_1 bases.
    std::optional<double> eta_override;
    std::optional<double> codegree_exponent;  // default 2 in override mode
    std::optional<double> error_exponent;     // default 2 in override mode
    std::size_t max_retries_per_round = 8;
    std::size_t finisher_sweeps = 64;
    TraceSink trace_sink;
};

struct PipelineResult {
    bool ok = false;
    PartialColoring phi;  // total on success
    NibbleRun::Status nibble_status = NibbleRun::Status::completed;
    std::size_t rounds = 0;
    std::vector<RoundReport> round_reports;
    std::size_t handoff_vertices = 0;  // size of the pair handed to the finisher
    std::size_t handoff_min_list = 0;
    std::size_t finisher_sweeps = 0;
    std::size_t colors_used = 0;
    NibbleSchedule schedule;
    std::string message;
};

/// Driver rounds followed by the finisher. In override mode the schedule is
/// rebased on the measured max color-degree and min list size; when rounds
/// exhaust their retries the remaining pair still goes to the finisher and
/// the rescue is recorded in `message`.
PipelineResult color_with_pipeline(const Graph& g, const ListAssignment& l,
                                   const PipelineOptions& opts, std::uint64_t seed);

}  // namespace nibble
