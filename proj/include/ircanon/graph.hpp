#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstdint>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ircanon {

using Vertex = int; // vertices are 1..n
using VertexAttr = std::uint64_t;
using EdgeAttr = std::uint64_t;

struct EdgeSpec {
    Vertex u = 0;
    Vertex v = 0;
    EdgeAttr attr = 0;
};

/// One entry of a globally ordered incidence list.
struct Incidence {
    Vertex to = 0;
    EdgeAttr attr = 0;
    std::uint32_t attr_index = 0; // dense index into the edge-attribute palette

    friend bool operator==(const Incidence& a, const Incidence& b) {
        return a.to == b.to && a.attr == b.attr;
    }
};

/// Undirected multigraph on vertices 1..n with totally ordered vertex and
/// edge attributes. Incidence lists are kept globally ordered: sorted by
/// neighbor index, parallel edges broken by edge attribute. Immutable after
/// construction; safe to share across threads.
class AttributedGraph {
public:
    AttributedGraph() = default;

    /// Build from an edge list. Vertex attributes default to 0. Throws
    /// std::invalid_argument on out-of-range indices, self-loops, or an
    /// attribute vector of the wrong length.
    static AttributedGraph build(int n, const std::vector<EdgeSpec>& edges,
                                 std::vector<VertexAttr> vertex_attrs = {}) {
        if (n < 0)
            throw std::invalid_argument("vertex count must be non-negative");
        AttributedGraph g;
        g.n_ = n;
        if (vertex_attrs.empty())
            vertex_attrs.assign(static_cast<std::size_t>(n), 0);
        if (static_cast<int>(vertex_attrs.size()) != n)
            throw std::invalid_argument("vertex attribute count does not match vertex count");
        g.vertex_attr_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (int v = 1; v <= n; ++v)
            g.vertex_attr_[static_cast<std::size_t>(v)] = vertex_attrs[static_cast<std::size_t>(v) - 1];
        g.adj_.assign(static_cast<std::size_t>(n) + 1, {});
        for (const EdgeSpec& e : edges) {
            if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
                throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(e.u) +
                                            ", " + std::to_string(e.v) + ")");
            if (e.u == e.v)
                throw std::invalid_argument("self-loops are not allowed: vertex " + std::to_string(e.u));
            g.adj_[static_cast<std::size_t>(e.u)].push_back({e.v, e.attr, 0});
            g.adj_[static_cast<std::size_t>(e.v)].push_back({e.u, e.attr, 0});
            g.palette_.push_back(e.attr);
        }
        g.edge_count_ = edges.size();
        std::sort(g.palette_.begin(), g.palette_.end());
        g.palette_.erase(std::unique(g.palette_.begin(), g.palette_.end()), g.palette_.end());
        for (int v = 1; v <= n; ++v) {
            auto& a = g.adj_[static_cast<std::size_t>(v)];
            std::sort(a.begin(), a.end(), [](const Incidence& x, const Incidence& y) {
                return x.to != y.to ? x.to < y.to : x.attr < y.attr;
            });
            for (Incidence& inc : a) {
                auto it = std::lower_bound(g.palette_.begin(), g.palette_.end(), inc.attr);
                inc.attr_index = static_cast<std::uint32_t>(it - g.palette_.begin());
            }
        }
        return g;
    }

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edge_count_; }

    VertexAttr vertex_attr(Vertex v) const { return vertex_attr_[checked(v)]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[checked(v)].size()); }
    std::span<const Incidence> incidences(Vertex v) const {
        const auto& a = adj_[checked(v)];
        return {a.data(), a.size()};
    }

    /// Sorted distinct edge attributes present in the graph.
    const std::vector<EdgeAttr>& edge_attr_palette() const { return palette_; }
    bool uniform_edge_attrs() const { return palette_.size() <= 1; }

    /// Every edge exactly once, as (u, v, attr) with u < v, in global order.
    std::vector<EdgeSpec> edges() const {
        std::vector<EdgeSpec> out;
        out.reserve(edge_count_);
        for (Vertex u = 1; u <= n_; ++u)
            for (const Incidence& inc : adj_[static_cast<std::size_t>(u)])
                if (inc.to > u)
                    out.push_back({u, inc.to, inc.attr});
        return out;
    }

    /// Multiline rendering of the globally ordered adjacency form, e.g.
    /// "1: 4\n2: 3 4\n...". Attributes are appended in brackets when present.
    std::string adjacency_string() const {
        std::ostringstream os;
        for (Vertex v = 1; v <= n_; ++v) {
            os << v << ':';
            if (vertex_attr_[static_cast<std::size_t>(v)] != 0)
                os << '<' << vertex_attr_[static_cast<std::size_t>(v)] << '>';
            for (const Incidence& inc : adj_[static_cast<std::size_t>(v)]) {
                os << ' ' << inc.to;
                if (!uniform_edge_attrs() || (palette_.size() == 1 && palette_[0] != 0))
                    os << '[' << inc.attr << ']';
            }
            os << '\n';
        }
        return os.str();
    }

    friend std::strong_ordering compare_representation(const AttributedGraph& a,
                                                       const AttributedGraph& b) {
        if (a.n_ != b.n_)
            throw std::invalid_argument("cannot compare graphs of different order");
        // Vertex attributes first, in index order.
        for (int v = 1; v <= a.n_; ++v) {
            if (auto c = a.vertex_attr_[static_cast<std::size_t>(v)] <=>
                         b.vertex_attr_[static_cast<std::size_t>(v)];
                c != 0)
                return c;
        }
        // Then the adjacency lists: per vertex, length before content.
        for (int v = 1; v <= a.n_; ++v) {
            const auto& la = a.adj_[static_cast<std::size_t>(v)];
            const auto& lb = b.adj_[static_cast<std::size_t>(v)];
            if (auto c = la.size() <=> lb.size(); c != 0)
                return c;
            for (std::size_t i = 0; i < la.size(); ++i) {
                if (auto c = la[i].to <=> lb[i].to; c != 0)
                    return c;
                if (auto c = la[i].attr <=> lb[i].attr; c != 0)
                    return c;
            }
        }
        return std::strong_ordering::equal;
    }

    friend bool representation_equal(const AttributedGraph& a, const AttributedGraph& b) {
        return compare_representation(a, b) == std::strong_ordering::equal;
    }

private:
    std::size_t checked(Vertex v) const {
        assert(v >= 1 && v <= n_);
        return static_cast<std::size_t>(v);
    }

    int n_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<VertexAttr> vertex_attr_;       // 1-based
    std::vector<std::vector<Incidence>> adj_;   // 1-based, globally ordered
    std::vector<EdgeAttr> palette_;             // sorted distinct edge attrs
};

/// FNV-1a digest of the full representation, for display and log output.
inline std::uint64_t representation_digest(const AttributedGraph& g) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint64_t>(g.vertex_count()));
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
        mix(g.vertex_attr(v));
        mix(static_cast<std::uint64_t>(g.degree(v)));
        for (const Incidence& inc : g.incidences(v)) {
            mix(static_cast<std::uint64_t>(inc.to));
            mix(inc.attr);
        }
    }
    return h;
}

} // namespace ircanon
