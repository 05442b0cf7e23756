#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "core.hpp"

namespace ircanon {

/// Prunes target-cell siblings that are equivalent under the automorphisms
/// discovered so far. The stabilizer of a node's individualization sequence
/// is obtained by direct filtering of the generator list (no composition, no
/// stabilizer chains, no cap on stored generators); a generation counter per
/// node makes the filtering incremental. Each node keeps the orbit partition
/// of its target cell in a union-find structure; of every orbit only the
/// minimum (or the child leading to the current best leaf) is kept.
class AutPruner final : public Visitor {
public:
    std::string name() const override { return "aut-pruner"; }

    struct Data final : VisitorNodeData {
        std::size_t k = 0;              // generation used for the last pruning
        std::vector<std::size_t> stab;  // generator indices fixing the node's sequence
        OrbitPartition orbit{0};        // of the target cell, lazily sized
    };

    std::unique_ptr<VisitorNodeData> make_node_data(const TreeNode&) override {
        return std::make_unique<Data>();
    }

    void before_descend(Canonizer& cz, TreeNode& node) override { prune_children(cz, node); }

    void isomorphic_leaf(Canonizer& cz, TreeNode& leaf, const Permutation&) override {
        TreeNode* canon = cz.canon_leaf();
        assert(canon != nullptr && canon != &leaf);
        // Prune the subtree hanging off the lowest common ancestor on the new
        // leaf's side; everything in it maps into the canon leaf's side.
        TreeNode* a = canon;
        TreeNode* b = &leaf;
        TreeNode* below_lca = nullptr;
        while (a->depth() > b->depth())
            a = a->parent();
        while (b->depth() > a->depth()) {
            below_lca = b;
            b = b->parent();
        }
        while (a != b) {
            a = a->parent();
            below_lca = b;
            b = b->parent();
        }
        assert(below_lca != nullptr); // distinct leaves diverge somewhere
        cz.prune_tree(*below_lca);
    }

private:
    void prune_children(Canonizer& cz, TreeNode& node) {
        if (node.parent() != nullptr)
            prune_children(cz, *node.parent());
        const GeneratorSet& gens = cz.generators();
        std::size_t k_goal =
            node.parent() ? node.parent()->data<Data>(suite_index()).k : gens.generation();
        Data& d = node.data<Data>(suite_index());
        if (d.k == k_goal)
            return;
        std::vector<Vertex> seq = node.individualization_sequence();
        std::vector<std::size_t> fresh = gens.filter_stabilizer(seq, d.k);
        d.k = k_goal;
        if (!node.has_target_cell()) {
            d.stab.insert(d.stab.end(), fresh.begin(), fresh.end());
            return;
        }
        if (d.orbit.size() == 0)
            d.orbit = OrbitPartition(cz.graph().vertex_count());
        for (std::size_t gi : fresh) {
            d.stab.push_back(gi);
            const Permutation& gamma = gens[gi];
            for (int slot = 0; slot < node.target_cell_size(); ++slot) {
                Vertex w = node.target_vertex(slot);
                d.orbit.unite(w, gamma(w));
            }
        }
        // The child on the path to the current best leaf survives its orbit;
        // every other orbit keeps its minimum member.
        Vertex protected_w = 0;
        if (const TreeNode* leaf = cz.canon_leaf()) {
            const TreeNode* t = leaf;
            while (t != nullptr && t->depth() > node.depth() + 1)
                t = t->parent();
            if (t != nullptr && t->depth() == node.depth() + 1 && t->parent() == &node)
                protected_w = t->individualized_vertex();
        }
        for (int slot = 0; slot < node.target_cell_size(); ++slot) {
            Vertex w = node.target_vertex(slot);
            Vertex keep = d.orbit.orbit_min(w);
            if (protected_w != 0 && d.orbit.same_orbit(w, protected_w))
                keep = protected_w;
            if (w == keep || node.child_pruned(slot))
                continue;
            node.mark_child_pruned(slot);
            if (TreeNode* c = node.child(slot))
                cz.prune_tree(*c);
        }
    }
};

} // namespace ircanon
