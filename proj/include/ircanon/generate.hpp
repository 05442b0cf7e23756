#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "permutation.hpp"

namespace ircanon {

/// Desk-scale graph families for the test corpus and the gen subcommand.

inline AttributedGraph gen_gnp(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<EdgeSpec> edges;
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = u + 1; v <= n; ++v)
            if (coin(rng))
                edges.push_back({u, v, 0});
    return AttributedGraph::build(n, edges);
}

/// Random d-regular simple graph via the pairing model with rejection.
inline AttributedGraph gen_regular(int n, int d, std::mt19937_64& rng) {
    if (n * d % 2 != 0 || d >= n)
        throw std::invalid_argument("no d-regular graph on n vertices exists");
    for (int attempt = 0; attempt < 2000; ++attempt) {
        std::vector<Vertex> stubs;
        stubs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
        for (Vertex v = 1; v <= n; ++v)
            for (int i = 0; i < d; ++i)
                stubs.push_back(v);
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::set<std::pair<Vertex, Vertex>> seen;
        std::vector<EdgeSpec> edges;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            Vertex u = stubs[i];
            Vertex v = stubs[i + 1];
            if (u == v || !seen.insert({std::min(u, v), std::max(u, v)}).second) {
                ok = false;
                break;
            }
            edges.push_back({u, v, 0});
        }
        if (ok)
            return AttributedGraph::build(n, edges);
    }
    throw std::runtime_error("pairing model failed to produce a simple regular graph");
}

/// Circulant graph: v adjacent to v+o (mod n) for every offset o.
inline AttributedGraph gen_circulant(int n, const std::vector<int>& offsets) {
    std::vector<EdgeSpec> edges;
    std::set<std::pair<Vertex, Vertex>> seen;
    for (Vertex v = 1; v <= n; ++v) {
        for (int o : offsets) {
            if (o <= 0 || o >= n)
                throw std::invalid_argument("circulant offset must be in 1..n-1");
            Vertex w = static_cast<Vertex>((v - 1 + o) % n + 1);
            if (v == w)
                continue;
            auto key = std::minmax(v, w);
            if (seen.insert({key.first, key.second}).second)
                edges.push_back({v, w, 0});
        }
    }
    return AttributedGraph::build(n, edges);
}

inline AttributedGraph gen_complement(const AttributedGraph& g) {
    std::set<std::pair<Vertex, Vertex>> present;
    for (const EdgeSpec& e : g.edges())
        present.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    std::vector<EdgeSpec> edges;
    for (Vertex u = 1; u <= g.vertex_count(); ++u)
        for (Vertex v = u + 1; v <= g.vertex_count(); ++v)
            if (!present.count({u, v}))
                edges.push_back({u, v, 0});
    std::vector<VertexAttr> attrs;
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        attrs.push_back(g.vertex_attr(v));
    return AttributedGraph::build(g.vertex_count(), edges, std::move(attrs));
}

inline AttributedGraph gen_disjoint_union(const AttributedGraph& a, const AttributedGraph& b) {
    const int na = a.vertex_count();
    std::vector<EdgeSpec> edges = a.edges();
    for (const EdgeSpec& e : b.edges())
        edges.push_back({e.u + na, e.v + na, e.attr});
    std::vector<VertexAttr> attrs;
    for (Vertex v = 1; v <= na; ++v)
        attrs.push_back(a.vertex_attr(v));
    for (Vertex v = 1; v <= b.vertex_count(); ++v)
        attrs.push_back(b.vertex_attr(v));
    return AttributedGraph::build(na + b.vertex_count(), edges, std::move(attrs));
}

/// Copy of g with vertex attributes drawn uniformly from 0..palette-1.
inline AttributedGraph with_random_vertex_attrs(const AttributedGraph& g, int palette,
                                                std::mt19937_64& rng) {
    std::uniform_int_distribution<VertexAttr> pick(0, static_cast<VertexAttr>(palette - 1));
    std::vector<VertexAttr> attrs;
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        attrs.push_back(pick(rng));
    return AttributedGraph::build(g.vertex_count(), g.edges(), std::move(attrs));
}

/// Copy of g with edge attributes drawn uniformly from 0..palette-1.
inline AttributedGraph with_random_edge_attrs(const AttributedGraph& g, int palette,
                                              std::mt19937_64& rng) {
    std::uniform_int_distribution<EdgeAttr> pick(0, static_cast<EdgeAttr>(palette - 1));
    std::vector<EdgeSpec> edges = g.edges();
    for (EdgeSpec& e : edges)
        e.attr = pick(rng);
    std::vector<VertexAttr> attrs;
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        attrs.push_back(g.vertex_attr(v));
    return AttributedGraph::build(g.vertex_count(), edges, std::move(attrs));
}

inline Permutation random_permutation(int n, std::mt19937_64& rng) {
    std::vector<Vertex> images(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        images[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(images.begin(), images.end(), rng);
    return Permutation::from_images(images);
}

} // namespace ircanon
