#pragma once

#include <cassert>
#include <string>

#include "core.hpp"

namespace ircanon {

/// The simplest implicit-automorphism case: once a node's partition consists
/// only of cells of size 1 or 2, every further individualization and every
/// refinement split pairs two interchangeable vertices. The product of those
/// transpositions, accumulated over one node creation, is an automorphism.
/// One of the two children of such a node is pruned outright.
class ImplicitSize2 final : public Visitor {
public:
    std::string name() const override { return "implicit-size2"; }

    struct Data final : VisitorNodeData {
        bool fulfilled = false;
    };

    std::unique_ptr<VisitorNodeData> make_node_data(const TreeNode&) override {
        return std::make_unique<Data>();
    }

    void tree_init(Canonizer& cz) override { gamma_ = Permutation(cz.graph().vertex_count()); }

    void tree_node_create_begin(Canonizer&, TreeNode& node) override {
        const TreeNode* parent = node.parent();
        if (parent == nullptr || !parent->data<Data>(suite_index()).fulfilled)
            return;
        node.data<Data>(suite_index()).fulfilled = true;
        // All parent cells have size at most 2, so the individualized vertex
        // left a singleton partner directly after it.
        Vertex u = node.individualized_vertex();
        int p = node.pi().position(u);
        assert(p + 1 <= node.pi().size());
        Vertex v = node.pi().element(p + 1);
        gamma_.compose_transposition(u, v);
    }

    void new_cell(Canonizer&, TreeNode& node, int position) override {
        if (!node.data<Data>(suite_index()).fulfilled)
            return;
        // A split in a fulfilled node always separates a cell of size 2.
        Vertex u = node.pi().element(position - 1);
        Vertex v = node.pi().element(position);
        gamma_.compose_transposition(u, v);
    }

    void tree_node_create_end(Canonizer& cz, TreeNode& node) override {
        Data& d = node.data<Data>(suite_index());
        if (node.is_pruned()) {
            if (d.fulfilled)
                gamma_.reset_identity();
            return;
        }
        if (d.fulfilled) {
            cz.report_implicit_automorphism(node, gamma_);
            gamma_.reset_identity();
        } else if (!node.pi().discrete()) {
            if (node.pi().max_cell_size() <= 2)
                d.fulfilled = true;
        }
        if (d.fulfilled && !node.pi().discrete()) {
            // The target cell has exactly two vertices; other visitors may
            // have pruned one already.
            assert(node.target_cell_size() == 2);
            if (!node.child_pruned(0) && !node.child_pruned(1))
                node.mark_child_pruned(1);
        }
    }

private:
    Permutation gamma_;
};

} // namespace ircanon
