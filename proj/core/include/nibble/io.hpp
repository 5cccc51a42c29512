#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "nibble/graph.hpp"

namespace nibble {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Edge-list text: first line "n m", then m lines "u v" with 0-based ids.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
Graph load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const Graph& g);

// List assignment: JSON object {"lists": [[colors...], ...]} indexed by vertex id.
ListAssignment read_lists_json(std::istream& in);
void write_lists_json(std::ostream& out, const ListAssignment& l);
ListAssignment load_lists_json(const std::string& path);
void save_lists_json(const std::string& path, const ListAssignment& l);

// Coloring: JSON {"n": n, "coloring": {"<vertex>": color, ...}}.
PartialColoring read_coloring_json(std::istream& in);
void write_coloring_json(std::ostream& out, const PartialColoring& phi);
PartialColoring load_coloring_json(const std::string& path);
void save_coloring_json(const std::string& path, const PartialColoring& phi);

}  // namespace nibble
