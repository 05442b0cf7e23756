#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "core.hpp"

namespace ircanon {

namespace detail {

/// Iterative depth-first exploration from a node, with the visitation order
/// of the recursive formulation: before_descend is dispatched on entry and
/// again before every child decision; discrete nodes are reported through
/// add_leaf; child slots already pruned are skipped. Children that already
/// exist (left behind by a breadth-first phase) are descended into without
/// being recreated.
inline void dfs_from(Canonizer& cz, NodePtr start) {
    struct Frame {
        NodePtr node;
        int slot = 0;
    };
    std::vector<Frame> stack;
    auto enter = [&](NodePtr n, bool created_now) {
        cz.dispatch_before_descend(*n);
        if (n->is_pruned())
            return;
        if (n->pi().discrete()) {
            if (created_now)
                cz.add_leaf(*n);
            return;
        }
        stack.push_back({std::move(n), 0});
    };
    enter(std::move(start), true);
    while (!stack.empty()) {
        Frame& f = stack.back();
        TreeNode& node = *f.node;
        if (f.slot >= node.target_cell_size()) {
            stack.pop_back();
            continue;
        }
        cz.dispatch_before_descend(node);
        if (node.is_pruned()) {
            stack.pop_back();
            continue;
        }
        int slot = f.slot++;
        if (node.child_pruned(slot))
            continue;
        if (TreeNode* existing = node.child(slot)) {
            enter(NodePtr(existing), false);
            continue;
        }
        Vertex w = node.target_vertex(slot);
        NodePtr child = cz.make_child(node, w);
        if (child)
            enter(std::move(child), true);
    }
}

} // namespace detail

/// Classical depth-first traversal.
class DfsTraversal final : public Visitor {
public:
    std::string name() const override { return "dfs"; }
    bool can_traverse() const override { return true; }

    void traverse(Canonizer& cz, TreeNode& root) override { detail::dfs_from(cz, NodePtr(&root)); }
};

/// Conservative memory accounting for the breadth-first frontier: each tree
/// node is charged as a fixed number of arrays of n integers.
class MemoryGovernor {
public:
    MemoryGovernor(std::uint64_t limit_bytes, int n, int arrays_per_node = 4, int int_width = 4)
        : node_cost_(static_cast<std::uint64_t>(arrays_per_node) * static_cast<std::uint64_t>(int_width) *
                     static_cast<std::uint64_t>(n)),
          limit_(limit_bytes) {}

    std::uint64_t node_cost_bytes() const { return node_cost_; }
    std::uint64_t limit_bytes() const { return limit_; }

    /// How many frontier nodes fit in the limit.
    std::uint64_t budget() const { return node_cost_ == 0 ? 0 : limit_ / node_cost_; }

private:
    std::uint64_t node_cost_;
    std::uint64_t limit_;
};

/// Breadth-first traversal with experimental paths (BFSExp), and its
/// memory-bounded hybrid (BFSExpM) when a limit is set. Levels are processed
/// in depth order; each level first runs greedy root-to-leaf experimental
/// paths from the leftmost frontier nodes to establish an early best leaf,
/// then expands the frontier. With a limit, a node that does not fit in the
/// frontier budget is explored depth-first on the spot instead of being
/// parked, and breadth-first parking resumes once the frontier has drained.
class BfsExpTraversal : public Visitor {
public:
    explicit BfsExpTraversal(std::uint64_t limit_bytes = 0, int paths_per_level = 1)
        : limit_(limit_bytes), paths_per_level_(paths_per_level) {}

    std::string name() const override { return limit_ == 0 ? "bfs-exp" : "bfs-exp-m"; }
    bool can_traverse() const override { return true; }

    void tree_init(Canonizer& cz) override {
        pending_.clear();
        pending_count_ = 0;
        max_frontier_ = 0;
        dfs_fallbacks_ = 0;
        budget_ = std::numeric_limits<std::uint64_t>::max();
        if (limit_ != 0) {
            MemoryGovernor gov(limit_, cz.graph().vertex_count());
            budget_ = gov.budget();
            if (budget_ < 1)
                throw ResourceLimitError(
                    "memory limit of " + std::to_string(limit_) +
                    " bytes cannot hold a single tree node (node cost " +
                    std::to_string(gov.node_cost_bytes()) + " bytes)");
        }
    }

    void traverse(Canonizer& cz, TreeNode& root) override {
        if (root.pi().discrete()) {
            cz.dispatch_before_descend(root);
            if (!root.is_pruned())
                cz.add_leaf(root);
            return;
        }
        park(cz, NodePtr(&root));
        for (std::size_t d = 0; d < pending_.size(); ++d) {
            if (pending_[d].empty())
                continue;
            run_experimental_paths(cz, d);
            expand_level(cz, d);
        }
        pending_.clear();
        pending_count_ = 0;
    }

    std::uint64_t max_frontier() const { return max_frontier_; }
    std::uint64_t frontier_budget() const { return budget_; }

    void append_stats(std::vector<std::pair<std::string, std::string>>& out) const override {
        out.emplace_back(name() + ".max-frontier", std::to_string(max_frontier_));
        if (limit_ != 0) {
            out.emplace_back(name() + ".frontier-budget", std::to_string(budget_));
            out.emplace_back(name() + ".dfs-fallbacks", std::to_string(dfs_fallbacks_));
        }
    }

private:
    /// Take ownership of a freshly created (or root) node in the level store,
    /// or explore it depth-first right away when the frontier is full.
    /// Returns the parked raw pointer, or nullptr if it went to DFS.
    TreeNode* park(Canonizer& cz, NodePtr node) {
        if (pending_count_ + 1 > budget_) {
            ++dfs_fallbacks_;
            detail::dfs_from(cz, std::move(node));
            return nullptr;
        }
        std::size_t d = static_cast<std::size_t>(node->depth());
        if (pending_.size() <= d)
            pending_.resize(d + 1);
        TreeNode* raw = node.get();
        pending_[d].push_back(std::move(node));
        ++pending_count_;
        max_frontier_ = std::max(max_frontier_, pending_count_);
        assert(pending_count_ <= budget_);
        return raw;
    }

    void run_experimental_paths(Canonizer& cz, std::size_t level) {
        int launched = 0;
        for (std::size_t i = 0; i < pending_[level].size() && launched < paths_per_level_; ++i) {
            TreeNode* start = pending_[level][i].get();
            if (start == nullptr || start->is_pruned())
                continue;
            ++launched;
            TreeNode* node = start;
            while (true) {
                cz.dispatch_before_descend(*node);
                if (node->is_pruned())
                    break;
                if (node->pi().discrete()) {
                    cz.add_leaf(*node);
                    break;
                }
                int slot = 0;
                while (slot < node->target_cell_size() &&
                       (node->child_pruned(slot) ||
                        (node->child(slot) != nullptr && node->child(slot)->pi().discrete())))
                    ++slot; // skip pruned slots and already-reported leaves
                if (slot >= node->target_cell_size())
                    break;
                if (TreeNode* existing = node->child(slot)) {
                    node = existing;
                    continue;
                }
                NodePtr child = cz.make_child(*node, node->target_vertex(slot));
                if (!child)
                    continue; // slot became pruned; try the next one
                if (child->pi().discrete()) {
                    cz.dispatch_before_descend(*child);
                    if (!child->is_pruned())
                        cz.add_leaf(*child);
                    break;
                }
                TreeNode* parked = park(cz, std::move(child));
                if (parked == nullptr)
                    break; // went to DFS, subtree is done
                node = parked;
            }
        }
    }

    void expand_level(Canonizer& cz, std::size_t level) {
        for (std::size_t i = 0; i < pending_[level].size(); ++i) {
            NodePtr node = std::move(pending_[level][i]);
            --pending_count_;
            if (!node || node->is_pruned())
                continue;
            assert(!node->pi().discrete());
            for (int slot = 0; slot < node->target_cell_size(); ++slot) {
                cz.dispatch_before_descend(*node);
                if (node->is_pruned())
                    break;
                if (node->child_pruned(slot))
                    continue;
                if (node->child(slot) != nullptr)
                    continue; // created by an experimental path; parked deeper
                NodePtr child = cz.make_child(*node, node->target_vertex(slot));
                if (!child)
                    continue;
                if (child->pi().discrete()) {
                    cz.dispatch_before_descend(*child);
                    if (!child->is_pruned())
                        cz.add_leaf(*child);
                    continue;
                }
                park(cz, std::move(child));
            }
        }
        pending_[level].clear();
    }

    std::uint64_t limit_;
    int paths_per_level_;
    std::vector<std::vector<NodePtr>> pending_; // by depth; owning
    std::uint64_t pending_count_ = 0;
    std::uint64_t budget_ = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max_frontier_ = 0;
    std::uint64_t dfs_fallbacks_ = 0;
};

} // namespace ircanon
