#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nibble/concentration.hpp"

namespace nibble {

/// A concrete, serializable witness structure over a product space. The
/// indicators are conjunctions: R_i(x) = 1 iff x agrees with `pattern[i]` on
/// the trials `witness_sets[i]`, which also serve as the (fixed) witness
/// sets. beta and D are exact maxima computed by enumeration.
struct StructureInstance {
    std::string name;
    ProductSpace space;
    int n = 0;
    std::vector<std::vector<int>> witness_sets;  // per indicator: trial ids
    std::vector<std::vector<int>> patterns;      // per indicator: required values
    std::vector<std::uint32_t> exceptional_ids;  // outcome ids (mixed radix)
    double beta = 0;
    double D = 0;

    WitnessStructure materialize() const;
    std::size_t outcome_id(const Outcome& x) const;
};

struct RandomStructureOptions {
    std::size_t min_trials = 6;
    std::size_t max_trials = 14;
    int min_indicators = 4;
    int max_indicators = 20;
    /// 0: no exceptional set; 1: leading-trials slice of probability <= 1/6;
    /// 2: a single random outcome; 3: a slice on which every indicator fires
    /// (and nowhere else), leaving beta*D tiny and the tau grid in regime
    int exceptional_mode = 0;
    bool allow_nonuniform_trials = true;
};

StructureInstance random_conjunction_structure(std::uint64_t seed,
                                               const RandomStructureOptions& opts = {});

/// Corpus (de)serialization: {"structures": [...]}; see the repository README
/// for the field list.
std::string corpus_to_json(const std::vector<StructureInstance>& corpus);
std::vector<StructureInstance> corpus_from_json(const std::string& text);

/// Parse "a:b:step" into an inclusive grid.
std::vector<double> parse_tau_grid(const std::string& text);

}  // namespace nibble
