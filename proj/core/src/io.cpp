#include "nibble/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nibble {

namespace {

using json = nlohmann::json;

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path + " for reading");
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    return f;
}

json parse(std::istream& in, const char* what) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(std::string(what) + ": " + e.what());
    }
    return j;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };

    if (!next_line()) throw IoError("edge list: empty input, expected header 'n m'");
    std::istringstream header(line);
    long long n = -1, m = -1;
    if (!(header >> n >> m) || n < 0 || m < 0)
        throw IoError("edge list line " + std::to_string(lineno) + ": malformed header '" + line +
                      "', expected 'n m'");

    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!next_line())
            throw IoError("edge list: expected " + std::to_string(m) + " edges, got " +
                          std::to_string(i));
        std::istringstream es(line);
        long long u = -1, v = -1;
        if (!(es >> u >> v) || u < 0 || v < 0 || u >= n || v >= n)
            throw IoError("edge list line " + std::to_string(lineno) + ": malformed edge '" +
                          line + "'");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    try {
        return Graph(static_cast<std::size_t>(n), edges);
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("edge list: ") + e.what());
    }
}

void write_edge_list(std::ostream& out, const Graph& g) {
    const auto edges = g.edges();
    out << g.vertex_count() << ' ' << edges.size() << '\n';
    for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
}

Graph load_edge_list(const std::string& path) {
    auto f = open_in(path);
    return read_edge_list(f);
}

void save_edge_list(const std::string& path, const Graph& g) {
    auto f = open_out(path);
    write_edge_list(f, g);
}

ListAssignment read_lists_json(std::istream& in) {
    json j = parse(in, "lists json");
    if (!j.is_object() || !j.contains("lists") || !j["lists"].is_array())
        throw IoError("lists json: expected object with array field 'lists'");
    std::vector<std::vector<Color>> lists;
    lists.reserve(j["lists"].size());
    std::size_t v = 0;
    for (const auto& entry : j["lists"]) {
        if (!entry.is_array())
            throw IoError("lists json: entry " + std::to_string(v) + " is not an array");
        std::vector<Color> l;
        l.reserve(entry.size());
        for (const auto& c : entry) {
            if (!c.is_number_integer())
                throw IoError("lists json: non-integer color at vertex " + std::to_string(v));
            l.push_back(c.get<Color>());
        }
        lists.push_back(std::move(l));
        ++v;
    }
    try {
        return ListAssignment(std::move(lists));
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("lists json: ") + e.what());
    }
}

void write_lists_json(std::ostream& out, const ListAssignment& l) {
    json arr = json::array();
    for (Vertex v = 0; v < l.vertex_count(); ++v) arr.push_back(l.list(v));
    json j;
    j["lists"] = std::move(arr);
    out << j.dump() << '\n';
}

ListAssignment load_lists_json(const std::string& path) {
    auto f = open_in(path);
    return read_lists_json(f);
}

void save_lists_json(const std::string& path, const ListAssignment& l) {
    auto f = open_out(path);
    write_lists_json(f, l);
}

PartialColoring read_coloring_json(std::istream& in) {
    json j = parse(in, "coloring json");
    if (!j.is_object() || !j.contains("n") || !j.contains("coloring") ||
        !j["coloring"].is_object())
        throw IoError("coloring json: expected object with fields 'n' and 'coloring'");
    const auto n = j["n"].get<std::size_t>();
    PartialColoring phi(n);
    for (const auto& [key, val] : j["coloring"].items()) {
        std::size_t v = 0;
        try {
            v = std::stoull(key);
        } catch (...) {
            throw IoError("coloring json: non-numeric vertex key '" + key + "'");
        }
        if (v >= n) throw IoError("coloring json: vertex " + key + " out of range");
        if (!val.is_number_integer() || val.get<long long>() <= 0)
            throw IoError("coloring json: color of vertex " + key + " must be a positive integer");
        phi.set(static_cast<Vertex>(v), val.get<Color>());
    }
    return phi;
}

void write_coloring_json(std::ostream& out, const PartialColoring& phi) {
    json colors = json::object();
    for (Vertex v : phi.domain()) colors[std::to_string(v)] = phi.color(v);
    json j;
    j["n"] = phi.vertex_count();
    j["coloring"] = std::move(colors);
    out << j.dump() << '\n';
}

PartialColoring load_coloring_json(const std::string& path) {
    auto f = open_in(path);
    return read_coloring_json(f);
}

void save_coloring_json(const std::string& path, const PartialColoring& phi) {
    auto f = open_out(path);
    write_coloring_json(f, phi);
}

}  // namespace nibble
