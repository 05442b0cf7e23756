#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "permutation.hpp"

namespace ircanon {

class Canonizer;
class TreeNode;

enum class RefineStatus { unchanged, changed, aborted };

enum class LeafOutcome { first_leaf, new_best, equal, worse };

/// Base for per-node visitor data. A node carries one slot per registered
/// visitor, allocated when the node is created.
struct VisitorNodeData {
    virtual ~VisitorNodeData() = default;
};

/// The extension interface. A concrete visitor overrides the callbacks it
/// cares about; exactly one visitor in a suite must implement tree traversal
/// and exactly one must implement target cell selection.
class Visitor {
public:
    virtual ~Visitor() = default;

    virtual std::string name() const = 0;

    virtual bool can_traverse() const { return false; }
    virtual bool can_select_target_cell() const { return false; }

    /// Per-node data; return nullptr when the visitor needs none.
    virtual std::unique_ptr<VisitorNodeData> make_node_data(const TreeNode&) { return nullptr; }

    /// Called once per run, before the root is created. Visitors reset their
    /// per-tree state here.
    virtual void tree_init(Canonizer&) {}

    /// Traversal entry point (traversal visitor only).
    virtual void traverse(Canonizer&, TreeNode& /*root*/) {}

    /// Return the start position of the selected non-singleton cell
    /// (target cell visitor only).
    virtual int select_target_cell(Canonizer&, TreeNode&) { return 0; }

    virtual void tree_node_create_begin(Canonizer&, TreeNode&) {}
    virtual RefineStatus refine(Canonizer&, TreeNode&) { return RefineStatus::unchanged; }
    virtual void refine_abort(Canonizer&, TreeNode&) {}
    virtual void tree_node_create_end(Canonizer&, TreeNode&) {}
    virtual void tree_node_destroy(Canonizer&, TreeNode&) {}

    /// Called by traversals before deciding which child to create next.
    virtual void before_descend(Canonizer&, TreeNode&) {}

    /// A new leaf produced a permuted graph equal to the current best leaf's.
    virtual void isomorphic_leaf(Canonizer&, TreeNode& /*leaf*/, const Permutation& /*aut*/) {}

    /// An automorphism deduced at an internal node by some visitor.
    virtual void implicit_automorphism(Canonizer&, TreeNode& /*origin*/, const Permutation&) {}

    /// A refiner created a new cell starting at the given position.
    virtual void new_cell(Canonizer&, TreeNode&, int /*position*/) {}

    /// A refiner finished one splitter round in which at least one cell split.
    virtual void refine_round_end(Canonizer&, TreeNode&) {}

    /// Leaf comparison outcome, for instrumentation.
    virtual void leaf_result(Canonizer&, TreeNode&, LeafOutcome) {}

    /// A node was flagged by prune_tree.
    virtual void node_pruned(Canonizer&, TreeNode&) {}

    /// The traversal finished.
    virtual void run_end(Canonizer&) {}

    /// Contribute (key, value) pairs to the run report.
    virtual void append_stats(std::vector<std::pair<std::string, std::string>>&) const {}

    int suite_index() const { return suite_index_; }

private:
    friend class VisitorSuite;
    int suite_index_ = -1;
};

} // namespace ircanon
