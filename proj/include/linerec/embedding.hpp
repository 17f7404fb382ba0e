#pragma once

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "linerec/graph.hpp"
#include "linerec/rational.hpp"

namespace linerec {

/// A simple graph whose vertices carry exact, pairwise distinct rational
/// positions on the line.
struct EmbeddedGraph {
    Graph graph;
    std::vector<Rational> positions;

    EmbeddedGraph() = default;
    EmbeddedGraph(Graph g, std::vector<Rational> pos)
        : graph(std::move(g)), positions(std::move(pos)) {
        if (static_cast<int>(positions.size()) != graph.vertex_count())
            throw std::invalid_argument("every vertex needs a position");
        std::set<Rational> seen(positions.begin(), positions.end());
        if (static_cast<int>(seen.size()) != graph.vertex_count())
            throw std::invalid_argument("positions must be pairwise distinct");
    }

    bool operator==(const EmbeddedGraph& o) const {
        return graph.vertex_count() == o.graph.vertex_count() &&
               graph.edges() == o.graph.edges() && positions == o.positions;
    }
};

/// Strictly positive edge lengths, defined exactly on E(G).
struct EdgeLengthMap {
    std::map<Edge, Rational> lengths;
};

/// lengths[uv] = |f(u) - f(v)| for every edge uv.
inline EdgeLengthMap distance_map(const EmbeddedGraph& eg) {
    EdgeLengthMap out;
    for (const Edge& e : eg.graph.edges())
        out.lengths[e] = rat_abs(eg.positions[e.u] - eg.positions[e.v]);
    return out;
}

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

namespace detail {
// Next content line, '#' comments and blank lines stripped. Returns false at EOF.
inline bool next_line(std::istream& in, std::string& out, int& line_no) {
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        out = raw.substr(first, raw.find_last_not_of(" \t\r") - first + 1);
        return true;
    }
    return false;
}
}  // namespace detail

/// Instance file: "n m", then n lines "vertex num/den", then m lines "u v".
inline EmbeddedGraph read_instance(std::istream& in) {
    int line_no = 0;
    std::string line;
    if (!detail::next_line(in, line, line_no)) throw ParseError(line_no, "missing header");
    std::istringstream header(line);
    long long n = -1, m = -1;
    if (!(header >> n >> m) || n < 0 || m < 0) throw ParseError(line_no, "bad header, expected 'n m'");

    std::vector<Rational> positions(n);
    std::vector<bool> seen(n, false);
    for (long long i = 0; i < n; ++i) {
        if (!detail::next_line(in, line, line_no)) throw ParseError(line_no, "missing position line");
        std::istringstream ls(line);
        long long v;
        std::string lit;
        if (!(ls >> v >> lit)) throw ParseError(line_no, "bad position line, expected 'vertex num/den'");
        if (v < 0 || v >= n) throw ParseError(line_no, "vertex index out of range");
        if (seen[v]) throw ParseError(line_no, "duplicate position for vertex " + std::to_string(v));
        try {
            positions[v] = rat_parse(lit);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
        seen[v] = true;
    }
    std::vector<Edge> edges;
    for (long long i = 0; i < m; ++i) {
        if (!detail::next_line(in, line, line_no)) throw ParseError(line_no, "missing edge line");
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v)) throw ParseError(line_no, "bad edge line, expected 'u v'");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(line_no, "edge endpoint out of range");
        if (u == v) throw ParseError(line_no, "self-loop");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    try {
        return EmbeddedGraph(Graph(static_cast<int>(n), std::move(edges)), std::move(positions));
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
}

inline EmbeddedGraph read_instance(const std::string& text) {
    std::istringstream in(text);
    return read_instance(in);
}

inline void write_instance(const EmbeddedGraph& eg, std::ostream& out) {
    out << eg.graph.vertex_count() << ' ' << eg.graph.edge_count() << '\n';
    for (int v = 0; v < eg.graph.vertex_count(); ++v)
        out << v << ' ' << rat_to_string(eg.positions[v]) << '\n';
    for (const Edge& e : eg.graph.edges()) out << e.u << ' ' << e.v << '\n';
}

inline std::string write_instance(const EmbeddedGraph& eg) {
    std::ostringstream out;
    write_instance(eg, out);
    return out.str();
}

}  // namespace linerec
