#pragma once

#include <random>
#include <string>
#include <vector>

#include "ircanon/ircanon.hpp"

namespace testutil {

using namespace ircanon;

// The 10-vertex example graph whose search tree is pinned by golden tests:
// edges 1-3 1-4 2-5 2-6 3-7 3-10 4-8 4-9 5-7 5-9 6-8 6-10 7-9 8-10.
inline AttributedGraph tree_example_graph() {
    std::vector<EdgeSpec> edges;
    for (auto [u, v] : std::initializer_list<std::pair<int, int>>{{1, 3},
                                                                  {1, 4},
                                                                  {2, 5},
                                                                  {2, 6},
                                                                  {3, 7},
                                                                  {3, 10},
                                                                  {4, 8},
                                                                  {4, 9},
                                                                  {5, 7},
                                                                  {5, 9},
                                                                  {6, 8},
                                                                  {6, 10},
                                                                  {7, 9},
                                                                  {8, 10}})
        edges.push_back({u, v, 0});
    return AttributedGraph::build(10, edges);
}

// The small adjacency-list comparison example: G1 (equal to G2 in
// representation) and G, related by pi1 = (1 2 4)(3) and pi2 = (1 2 3 4).
inline AttributedGraph small_example_g1() {
    return AttributedGraph::build(4, {{1, 4, 0}, {2, 3, 0}, {2, 4, 0}, {3, 4, 0}});
}
inline AttributedGraph small_example_g() {
    return AttributedGraph::build(4, {{1, 2, 0}, {1, 3, 0}, {1, 4, 0}, {3, 4, 0}});
}
inline AttributedGraph small_example_g2() {
    return AttributedGraph::build(4, {{1, 4, 0}, {2, 4, 0}, {3, 4, 0}, {2, 3, 0}});
}

inline AttributedGraph path_graph(int n) {
    std::vector<EdgeSpec> edges;
    for (int v = 1; v < n; ++v)
        edges.push_back({v, v + 1, 0});
    return AttributedGraph::build(n, edges);
}

inline AttributedGraph cycle_graph(int n) {
    std::vector<EdgeSpec> edges;
    for (int v = 1; v < n; ++v)
        edges.push_back({v, v + 1, 0});
    edges.push_back({n, 1, 0});
    return AttributedGraph::build(n, edges);
}

inline AttributedGraph complete_graph(int n) {
    std::vector<EdgeSpec> edges;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            edges.push_back({u, v, 0});
    return AttributedGraph::build(n, edges);
}

// Star K_{1,k} with center 1.
inline AttributedGraph star_graph(int k) {
    std::vector<EdgeSpec> edges;
    for (int v = 2; v <= k + 1; ++v)
        edges.push_back({1, v, 0});
    return AttributedGraph::build(k + 1, edges);
}

// The image of an ordered partition under a permutation: cell structure kept,
// every element mapped. Within a cell, elements are re-sorted so that the
// result does not depend on the original element order (cells are sets).
inline OrderedPartition permuted_partition(const OrderedPartition& pi, const Permutation& gamma) {
    std::string text = "[";
    bool first_cell = true;
    for (int s = 1; s <= pi.size(); s = pi.next_cell(s)) {
        if (!first_cell)
            text += " | ";
        first_cell = false;
        std::vector<Vertex> cell;
        for (int i = s; i < s + pi.cell_size(s); ++i)
            cell.push_back(gamma(pi.element(i)));
        std::sort(cell.begin(), cell.end());
        for (std::size_t i = 0; i < cell.size(); ++i)
            text += (i ? " " : "") + std::to_string(cell[i]);
    }
    text += "]";
    return OrderedPartition::parse(text);
}

// Cell contents in order, as sorted vectors; partition equality as SETS of
// ordered cells (element order within a cell is representation detail).
inline std::vector<std::vector<Vertex>> cells_of(const OrderedPartition& pi) {
    std::vector<std::vector<Vertex>> out;
    for (int s = 1; s <= pi.size(); s = pi.next_cell(s)) {
        std::vector<Vertex> cell;
        for (int i = s; i < s + pi.cell_size(s); ++i)
            cell.push_back(pi.element(i));
        std::sort(cell.begin(), cell.end());
        out.push_back(std::move(cell));
    }
    return out;
}

inline AttributedGraph random_graph(int n, double p, std::mt19937_64& rng) {
    return gen_gnp(n, p, rng);
}

// Records the dispatch order of framework events, by name.
class EventRecorder final : public Visitor {
public:
    std::string name() const override { return "event-recorder"; }

    RefineStatus refine(Canonizer&, TreeNode& node) override {
        log.push_back("refine@" + std::to_string(node.id()));
        return RefineStatus::unchanged;
    }
    void tree_node_create_begin(Canonizer&, TreeNode& node) override {
        log.push_back("begin@" + std::to_string(node.id()));
    }
    void tree_node_create_end(Canonizer&, TreeNode& node) override {
        log.push_back("end@" + std::to_string(node.id()));
    }
    void tree_node_destroy(Canonizer&, TreeNode& node) override {
        log.push_back("destroy@" + std::to_string(node.id()));
    }
    void before_descend(Canonizer&, TreeNode& node) override {
        log.push_back("beforeDescend@" + std::to_string(node.id()));
    }
    void new_cell(Canonizer&, TreeNode& node, int pos) override {
        log.push_back("newCell@" + std::to_string(node.id()) + ":" + std::to_string(pos));
    }
    void isomorphic_leaf(Canonizer&, TreeNode& node, const Permutation&) override {
        log.push_back("isomorphicLeaf@" + std::to_string(node.id()));
    }
    void implicit_automorphism(Canonizer&, TreeNode& node, const Permutation& g) override {
        log.push_back("implicitAut@" + std::to_string(node.id()) + ":" + g.to_cycle_string());
    }
    void leaf_result(Canonizer&, TreeNode& node, LeafOutcome out) override {
        static const char* names[] = {"first", "best", "equal", "worse"};
        log.push_back(std::string("leaf-") + names[static_cast<int>(out)] + "@" +
                      std::to_string(node.id()));
    }

    std::vector<std::string> log;
};

} // namespace testutil
