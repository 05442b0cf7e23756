#pragma once

#include <algorithm>
#include <cassert>
#include <vector>

#include "core.hpp"

namespace ircanon {

/// True iff every vertex of the cell at u_start has at least one neighbor and
/// at least one non-neighbor in the cell at w_start. Parallel edges count as
/// a single adjacency; edge attributes are ignored.
inline bool non_uniformly_joined(const AttributedGraph& g, const OrderedPartition& pi, int u_start,
                                 int w_start) {
    assert(u_start != w_start);
    const int w_size = pi.cell_size(w_start);
    const int u_size = pi.cell_size(u_start);
    for (int i = u_start; i < u_start + u_size; ++i) {
        Vertex u = pi.element(i);
        int neighbors_in_w = 0;
        Vertex last = 0;
        for (const Incidence& inc : g.incidences(u)) {
            if (inc.to == last)
                continue; // parallel edge
            last = inc.to;
            if (pi.cell_start_of_vertex(inc.to) == w_start)
                ++neighbors_in_w;
        }
        if (neighbors_in_w == 0 || neighbors_in_w == w_size)
            return false;
    }
    return true;
}

/// F: the first (leftmost) non-singleton cell.
class SelectFirst final : public Visitor {
public:
    std::string name() const override { return "f"; }
    bool can_select_target_cell() const override { return true; }

    int select_target_cell(Canonizer&, TreeNode& node) override {
        const OrderedPartition& pi = node.pi();
        for (int s = 1; s <= pi.size(); s = pi.next_cell(s))
            if (pi.cell_size(s) >= 2)
                return s;
        assert(false && "select_target_cell on a discrete partition");
        return 0;
    }
};

/// FL: the first cell of maximum cardinality.
class SelectFirstLargest final : public Visitor {
public:
    std::string name() const override { return "fl"; }
    bool can_select_target_cell() const override { return true; }

    int select_target_cell(Canonizer&, TreeNode& node) override {
        const OrderedPartition& pi = node.pi();
        int best = 0;
        int best_size = 1;
        for (int s = 1; s <= pi.size(); s = pi.next_cell(s))
            if (pi.cell_size(s) > best_size) {
                best = s;
                best_size = pi.cell_size(s);
            }
        assert(best != 0);
        return best;
    }
};

/// FLM: among the cells of maximum cardinality, the one non-uniformly joined
/// to the greatest number of other cells; ties go to the leftmost.
class SelectFirstLargestMostJoined final : public Visitor {
public:
    std::string name() const override { return "flm"; }
    bool can_select_target_cell() const override { return true; }

    int select_target_cell(Canonizer& cz, TreeNode& node) override {
        const OrderedPartition& pi = node.pi();
        const AttributedGraph& g = cz.graph();
        const int n = pi.size();
        int max_size = pi.max_cell_size();
        assert(max_size >= 2);
        if (static_cast<int>(stamp_.size()) < n + 1)
            stamp_.assign(static_cast<std::size_t>(n) + 1, 0);
        int best = 0;
        int best_joins = -1;
        for (int s = 1; s <= n; s = pi.next_cell(s)) {
            if (pi.cell_size(s) != max_size)
                continue;
            // Only cells adjacent to the candidate can possibly qualify;
            // collect them once, then run the exact predicate.
            ++round_;
            touched_.clear();
            for (int i = s; i < s + max_size; ++i) {
                for (const Incidence& inc : g.incidences(pi.element(i))) {
                    int w = pi.cell_start_of_vertex(inc.to);
                    if (w == s || stamp_[static_cast<std::size_t>(w)] == round_)
                        continue;
                    stamp_[static_cast<std::size_t>(w)] = round_;
                    touched_.push_back(w);
                }
            }
            int joins = 0;
            for (int w : touched_)
                if (non_uniformly_joined(g, pi, s, w))
                    ++joins;
            if (joins > best_joins) {
                best = s;
                best_joins = joins;
            }
        }
        assert(best != 0);
        return best;
    }

private:
    std::vector<std::uint64_t> stamp_;
    std::uint64_t round_ = 0;
    std::vector<int> touched_;
};

} // namespace ircanon
