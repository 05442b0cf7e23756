#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace ircanon {

/// DIMACS-style graph format:
///   c <comment>
///   p edge <n> <m>
///   e <u> <v>          edge with the default attribute 0
///   f <u> <v> <attr>   edge with an explicit attribute
///   n <v> <attr>       vertex attribute
/// Vertices are 1..n. Unknown lines are errors, reported with line numbers.
inline AttributedGraph parse_dimacs(std::istream& in) {
    int n = -1;
    std::vector<EdgeSpec> edges;
    std::vector<VertexAttr> vattrs;
    std::string line;
    int lineno = 0;
    auto fail = [&lineno](const std::string& what) {
        throw std::invalid_argument("dimacs line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag))
            continue; // blank
        if (tag == "c")
            continue;
        if (tag == "p") {
            if (n >= 0)
                fail("duplicate p line");
            std::string kind;
            long m = 0;
            if (!(ls >> kind >> n >> m) || kind != "edge" || n < 0 || m < 0)
                fail("malformed header, expected 'p edge <n> <m>'");
            vattrs.assign(static_cast<std::size_t>(n), 0);
            continue;
        }
        if (n < 0)
            fail("expected the 'p edge' header first");
        if (tag == "e" || tag == "f") {
            EdgeSpec e;
            if (!(ls >> e.u >> e.v))
                fail("malformed edge line");
            if (tag == "f" && !(ls >> e.attr))
                fail("malformed edge attribute line");
            if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
                fail("edge index out of range");
            if (e.u == e.v)
                fail("self-loop");
            edges.push_back(e);
            continue;
        }
        if (tag == "n") {
            Vertex v = 0;
            VertexAttr a = 0;
            if (!(ls >> v >> a))
                fail("malformed vertex attribute line");
            if (v < 1 || v > n)
                fail("vertex index out of range");
            vattrs[static_cast<std::size_t>(v) - 1] = a;
            continue;
        }
        fail("unknown line tag '" + tag + "'");
    }
    if (n < 0)
        throw std::invalid_argument("dimacs input has no 'p edge' header");
    return AttributedGraph::build(n, edges, std::move(vattrs));
}

inline AttributedGraph parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

inline void write_dimacs(std::ostream& os, const AttributedGraph& g) {
    os << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        if (g.vertex_attr(v) != 0)
            os << "n " << v << ' ' << g.vertex_attr(v) << '\n';
    for (const EdgeSpec& e : g.edges()) {
        if (e.attr == 0)
            os << "e " << e.u << ' ' << e.v << '\n';
        else
            os << "f " << e.u << ' ' << e.v << ' ' << e.attr << '\n';
    }
}

} // namespace ircanon
