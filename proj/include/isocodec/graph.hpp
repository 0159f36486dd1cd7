#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "isocodec/bits.hpp"
#include "isocodec/errors.hpp"
#include "isocodec/perm.hpp"
#include "isocodec/rng.hpp"

namespace isocodec {

// Simple undirected graph on [n]: symmetric adjacency, empty diagonal.
struct Graph {
    int n = 0;
    std::vector<std::uint8_t> adj;  // n*n, row-major, 1-based accessors below

    Graph() = default;
    explicit Graph(int vertices) : n(vertices), adj(std::size_t(vertices) * vertices, 0) {}

    bool edge(int u, int v) const { return adj[std::size_t(u - 1) * n + (v - 1)] != 0; }

    void set_edge(int u, int v, bool present = true) {
        if (u == v) throw ParseError("self-loop");
        adj[std::size_t(u - 1) * n + (v - 1)] = present;
        adj[std::size_t(v - 1) * n + (u - 1)] = present;
    }

    int edge_count() const {
        int total = 0;
        for (auto b : adj) total += b;
        return total / 2;
    }

    int degree(int v) const {
        int d = 0;
        for (int u = 1; u <= n; ++u) d += edge(v, u);
        return d;
    }

    bool operator==(const Graph&) const = default;
};

// Graph plus vertex colors; color 0 means uncolored. Used to pin vertices in
// place: automorphisms and isomorphisms must preserve colors.
struct ColoredGraph {
    Graph graph;
    std::vector<int> color;  // size n, values >= 0

    ColoredGraph() = default;
    ColoredGraph(Graph g) : graph(std::move(g)), color(graph.n, 0) {}  // NOLINT: deliberate implicit lift
    ColoredGraph(Graph g, std::vector<int> col) : graph(std::move(g)), color(std::move(col)) {
        if (static_cast<int>(color.size()) != graph.n)
            throw DimensionError("color vector must cover all vertices");
    }

    int n() const { return graph.n; }
    bool colored() const {
        for (int c : color)
            if (c != 0) return true;
        return false;
    }

    bool operator==(const ColoredGraph&) const = default;
};

// Row-major full-matrix bits, length n^2.
inline Bits adjacency_bits(const Graph& g) {
    Bits b;
    for (int u = 1; u <= g.n; ++u)
        for (int v = 1; v <= g.n; ++v) b.push_back(g.edge(u, v));
    return b;
}

// File format: line 1 is n; lines 2..n+1 are '0'/'1' rows; an optional final
// line "colors: c1 ... cn" carries vertex colors.
inline ColoredGraph parse_graph(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty graph file");
    int n;
    try {
        std::size_t used = 0;
        n = std::stoi(line, &used);
        while (used < line.size() && (line[used] == ' ' || line[used] == '\r')) ++used;
        if (used != line.size()) throw ParseError("trailing junk after vertex count");
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        throw ParseError("bad vertex count line: " + line);
    }
    if (n < 1) throw ParseError("vertex count must be >= 1");

    Graph g(n);
    for (int u = 1; u <= n; ++u) {
        if (!std::getline(is, line)) throw ParseError("missing adjacency row");
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (static_cast<int>(line.size()) != n) throw ParseError("adjacency row has wrong length");
        for (int v = 1; v <= n; ++v) {
            char c = line[v - 1];
            if (c != '0' && c != '1') throw ParseError("adjacency entries must be 0/1");
            g.adj[std::size_t(u - 1) * n + (v - 1)] = (c == '1');
        }
    }
    for (int u = 1; u <= n; ++u) {
        if (g.edge(u, u)) throw ParseError("self-loop on vertex " + std::to_string(u));
        for (int v = u + 1; v <= n; ++v)
            if (g.edge(u, v) != g.edge(v, u)) throw ParseError("adjacency matrix not symmetric");
    }

    std::vector<int> colors(n, 0);
    while (std::getline(is, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("colors:", 0) != 0) throw ParseError("unexpected trailing line: " + line);
        std::istringstream cs(line.substr(7));
        for (int v = 0; v < n; ++v) {
            if (!(cs >> colors[v]) || colors[v] < 0) throw ParseError("bad colors line");
        }
        int extra;
        if (cs >> extra) throw ParseError("too many colors");
    }
    return ColoredGraph(std::move(g), std::move(colors));
}

inline std::string serialize_graph(const ColoredGraph& g) {
    std::ostringstream os;
    os << g.n() << '\n';
    for (int u = 1; u <= g.n(); ++u) {
        for (int v = 1; v <= g.n(); ++v) os << (g.graph.edge(u, v) ? '1' : '0');
        os << '\n';
    }
    if (g.colored()) {
        os << "colors:";
        for (int c : g.color) os << ' ' << c;
        os << '\n';
    }
    return os.str();
}

inline std::string serialize_graph(const Graph& g) { return serialize_graph(ColoredGraph(g)); }

// Copy of g under p: (p(u), p(v)) is an edge of the result iff (u, v) is an
// edge of g; the color of vertex v travels to p(v).
inline ColoredGraph apply_to_graph(const Permutation& p, const ColoredGraph& g) {
    if (p.n() != g.n()) throw DimensionError("apply_to_graph: mismatched n");
    Graph out(g.n());
    for (int u = 1; u <= g.n(); ++u)
        for (int v = u + 1; v <= g.n(); ++v)
            if (g.graph.edge(u, v)) out.set_edge(p(u), p(v));
    std::vector<int> colors(g.n(), 0);
    for (int v = 1; v <= g.n(); ++v) colors[p(v) - 1] = g.color[v - 1];
    return ColoredGraph(std::move(out), std::move(colors));
}

inline Graph apply_to_graph(const Permutation& p, const Graph& g) {
    return apply_to_graph(p, ColoredGraph(g)).graph;
}

// Distinct colors 1..prefix on vertices 1..prefix, a fresh color prefix+1 on
// vertex `distinguished`, color 0 elsewhere.
inline ColoredGraph individualize(const Graph& g, int prefix, int distinguished) {
    if (distinguished <= prefix || distinguished > g.n)
        throw RangeError("individualize: distinguished vertex must lie beyond the fixed prefix");
    if (prefix < 0 || prefix >= g.n) throw RangeError("individualize: bad prefix");
    std::vector<int> colors(g.n, 0);
    for (int v = 1; v <= prefix; ++v) colors[v - 1] = v;
    colors[distinguished - 1] = prefix + 1;
    return ColoredGraph(g, std::move(colors));
}

inline Graph random_graph(int n, double edge_prob, std::mt19937_64& rng) {
    Graph g(n);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) {
            // 53-bit uniform draw in [0,1)
            double r = double(rng() >> 11) * 0x1.0p-53;
            if (r < edge_prob) g.set_edge(u, v);
        }
    return g;
}

}  // namespace isocodec
