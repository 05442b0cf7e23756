#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core.hpp"

namespace ircanon {

/// An invariant emission: structurally compared, never hashed.
using InvariantValue = std::vector<std::uint64_t>;

/// Coordinates any number of node-invariant visitors. Each emission is a
/// (visitor id, value) pair; the stream of pairs along a root-to-leaf path is
/// the path invariant, compared lexicographically. The coordinator keeps the
/// best known stream, prunes nodes that compare worse, invalidates the best
/// leaf when a strictly better stream appears, and lazily prunes previously
/// created subtrees that matched an outdated best (via a generation stamp).
class InvariantCoordinator final : public Visitor {
public:
    enum class Outcome { better, equal, worse };

    std::string name() const override { return "invariant-coordinator"; }

    /// Invariant visitors obtain their id at suite construction; ids order
    /// emissions of different visitors at the same stream position.
    int register_invariant() { return next_id_++; }

    struct Data final : VisitorNodeData {
        std::size_t offset = 0; // stream position of this node's first emission
        std::vector<std::pair<int, InvariantValue>> trace;
        bool worse = false;
        std::uint64_t gen = 0;
    };

    std::unique_ptr<VisitorNodeData> make_node_data(const TreeNode&) override {
        return std::make_unique<Data>();
    }

    void tree_init(Canonizer&) override {
        best_.clear();
        best_complete_ = false;
        gen_ = 1;
    }

    void tree_node_create_begin(Canonizer& cz, TreeNode& node) override {
        Data& d = node.data<Data>(suite_index());
        d.gen = gen_;
        if (const TreeNode* p = node.parent()) {
            const Data& pd = p->data<Data>(suite_index());
            d.offset = pd.offset + pd.trace.size();
            if (pd.worse) { // stale subtree; should have been pruned already
                d.worse = true;
                cz.prune_tree(node);
            }
        }
    }

    /// Called by invariant visitors during node creation.
    Outcome emit(Canonizer& cz, TreeNode& node, int invariant_id, InvariantValue value) {
        Data& d = node.data<Data>(suite_index());
        if (d.worse)
            return Outcome::worse;
        std::size_t k = d.offset + d.trace.size();
        if (k < best_.size()) {
            const auto& incumbent = best_[k];
            int cmp = invariant_id != incumbent.first
                          ? (invariant_id < incumbent.first ? -1 : 1)
                          : (value == incumbent.second ? 0 : (value < incumbent.second ? -1 : 1));
            if (cmp == 0) {
                d.trace.emplace_back(invariant_id, std::move(value));
                return Outcome::equal;
            }
            if (cmp > 0) {
                d.worse = true;
                d.gen = gen_;
                cz.prune_tree(node);
                return Outcome::worse;
            }
            // Strictly better: this path becomes the new best prefix. The old
            // best leaf and any subtree that matched the old stream beyond
            // this point are invalid; the latter are caught by generation
            // rechecks in before_descend.
            best_.resize(k);
            best_complete_ = false;
            ++gen_;
            d.gen = gen_;
            best_.emplace_back(invariant_id, value);
            d.trace.emplace_back(invariant_id, std::move(value));
            if (TreeNode* old_best = cz.canon_leaf())
                cz.prune_tree(*old_best); // clears the canon leaf
            return Outcome::better;
        }
        if (best_complete_) {
            // The best stream is a committed full path and this one extends
            // past its end, which compares greater.
            d.worse = true;
            d.gen = gen_;
            cz.prune_tree(node);
            return Outcome::worse;
        }
        best_.emplace_back(invariant_id, value);
        d.trace.emplace_back(invariant_id, std::move(value));
        return Outcome::better;
    }

    void tree_node_create_end(Canonizer& cz, TreeNode& node) override {
        if (node.is_pruned() || !node.pi().discrete())
            return;
        Data& d = node.data<Data>(suite_index());
        if (d.worse)
            return;
        std::size_t k = d.offset + d.trace.size();
        if (k < best_.size()) {
            // This full path is a proper prefix of the best stream, which
            // makes it lexicographically smaller: a new best.
            best_.resize(k);
            best_complete_ = true;
            ++gen_;
            d.gen = gen_;
            if (TreeNode* old_best = cz.canon_leaf())
                cz.prune_tree(*old_best);
            return;
        }
        assert(k == best_.size());
        best_complete_ = true;
    }

    void before_descend(Canonizer& cz, TreeNode& node) override {
        if (revalidate(node) && !node.is_pruned())
            cz.prune_tree(node);
    }

    std::size_t best_stream_length() const { return best_.size(); }
    const std::vector<std::pair<int, InvariantValue>>& best_stream() const { return best_; }

    void append_stats(std::vector<std::pair<std::string, std::string>>& out) const override {
        out.emplace_back("invariants.best-stream-length", std::to_string(best_.size()));
    }

private:
    /// Re-check a node's stored trace against the current best stream.
    /// Returns true when the node's path is now known to be worse.
    bool revalidate(TreeNode& node) {
        Data& d = node.data<Data>(suite_index());
        if (d.gen == gen_)
            return d.worse;
        if (node.parent() != nullptr && revalidate(*node.parent()))
            d.worse = true;
        if (!d.worse) {
            for (std::size_t j = 0; j < d.trace.size(); ++j) {
                std::size_t k = d.offset + j;
                if (k < best_.size()) {
                    if (d.trace[j] == best_[k])
                        continue;
                    // The best stream only ever gets smaller, so a stored
                    // equal-so-far trace can only be worse now.
                    d.worse = true;
                    break;
                }
                if (best_complete_) {
                    d.worse = true;
                    break;
                }
                best_.push_back(d.trace[j]); // still on the open best path
            }
        }
        d.gen = gen_;
        return d.worse;
    }

    int next_id_ = 0;
    std::vector<std::pair<int, InvariantValue>> best_;
    bool best_complete_ = false;
    std::uint64_t gen_ = 1;
};

/// T: the cell splitting trace. One value per refinement splitter round,
/// holding the ordered positions of the new cells of that round.
class CellSplitTrace final : public Visitor {
public:
    explicit CellSplitTrace(InvariantCoordinator& coord)
        : coord_(&coord), id_(coord.register_invariant()) {}

    std::string name() const override { return "invariant-t"; }

    void tree_node_create_begin(Canonizer&, TreeNode&) override { buf_.clear(); }

    void new_cell(Canonizer&, TreeNode&, int position) override {
        buf_.push_back(static_cast<std::uint64_t>(position));
    }

    void refine_round_end(Canonizer& cz, TreeNode& node) override {
        if (buf_.empty())
            return;
        InvariantValue v;
        v.swap(buf_);
        coord_->emit(cz, node, id_, std::move(v));
    }

private:
    InvariantCoordinator* coord_;
    int id_;
    InvariantValue buf_;
};

/// Q: the quotient-graph trace. At the end of node creation, emits for every
/// ordered cell pair (i, j), i <= j, joined by at least one edge, the
/// multiset of attributed degrees from cell i into cell j.
class QuotientTrace final : public Visitor {
public:
    explicit QuotientTrace(InvariantCoordinator& coord)
        : coord_(&coord), id_(coord.register_invariant()) {}

    std::string name() const override { return "invariant-q"; }

    void tree_node_create_end(Canonizer& cz, TreeNode& node) override {
        if (node.is_pruned())
            return;
        coord_->emit(cz, node, id_, quotient_summary(cz.graph(), node.pi()));
    }

    /// Encoding: per connected pair, [i, j, #degree-values, per value:
    /// #attr-pairs, (attr, count)...], concatenated in (i, j) order.
    static InvariantValue quotient_summary(const AttributedGraph& g, const OrderedPartition& pi) {
        std::vector<int> ord = pi.cell_index_by_vertex();
        // degree signature of each vertex toward each adjacent cell ordinal
        using Sig = std::vector<std::pair<std::uint64_t, std::uint64_t>>; // (attr, count)
        std::map<std::pair<int, int>, std::vector<Sig>> pairs;
        for (Vertex u = 1; u <= g.vertex_count(); ++u) {
            int i = ord[static_cast<std::size_t>(u)];
            std::map<int, Sig> toward;
            for (const Incidence& inc : g.incidences(u)) {
                int j = ord[static_cast<std::size_t>(inc.to)];
                if (j < i)
                    continue; // only pairs with i <= j, degrees from the i side
                Sig& s = toward[j];
                auto it = std::find_if(s.begin(), s.end(),
                                       [&](const auto& p) { return p.first == inc.attr; });
                if (it == s.end())
                    s.push_back({inc.attr, 1});
                else
                    ++it->second;
            }
            for (auto& [j, sig] : toward) {
                std::sort(sig.begin(), sig.end());
                pairs[{i, j}].push_back(std::move(sig));
            }
        }
        InvariantValue out;
        for (auto& [key, sigs] : pairs) {
            std::sort(sigs.begin(), sigs.end());
            out.push_back(static_cast<std::uint64_t>(key.first));
            out.push_back(static_cast<std::uint64_t>(key.second));
            out.push_back(sigs.size());
            for (const Sig& s : sigs) {
                out.push_back(s.size());
                for (auto [attr, count] : s) {
                    out.push_back(attr);
                    out.push_back(count);
                }
            }
        }
        return out;
    }

private:
    InvariantCoordinator* coord_;
    int id_;
};

/// PL: the partial-leaf trace. When a refinement round turns cells into new
/// singletons, each new singleton emits its position followed by the sorted
/// positions (with edge attributes) of the singleton cells that already
/// existed before the round and are adjacent to it.
class PartialLeafTrace final : public Visitor {
public:
    explicit PartialLeafTrace(InvariantCoordinator& coord)
        : coord_(&coord), id_(coord.register_invariant()) {}

    std::string name() const override { return "invariant-pl"; }

    void tree_node_create_begin(Canonizer&, TreeNode&) override { buf_.clear(); }

    void new_cell(Canonizer&, TreeNode&, int position) override { buf_.push_back(position); }

    void refine_round_end(Canonizer& cz, TreeNode& node) override {
        if (buf_.empty())
            return;
        const OrderedPartition& pi = node.pi();
        // Cells touched by this round: the new cells plus the shrunk first
        // fragments (the cell just before a new cell's first position).
        std::vector<int> candidates = buf_;
        std::vector<int> new_first;
        for (int p : buf_) {
            int q = pi.cell_start_of(p - 1);
            if (!std::binary_search(buf_.begin(), buf_.end(), q))
                new_first.push_back(q);
        }
        buf_.clear();
        candidates.insert(candidates.end(), new_first.begin(), new_first.end());
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        auto is_candidate = [&](int q) {
            return std::binary_search(candidates.begin(), candidates.end(), q);
        };
        for (int p : candidates) {
            if (pi.cell_size(p) != 1)
                continue; // only cells that just became singletons
            Vertex v = pi.element(p);
            InvariantValue value;
            value.push_back(static_cast<std::uint64_t>(p));
            std::vector<std::pair<int, EdgeAttr>> links;
            for (const Incidence& inc : cz.graph().incidences(v)) {
                int q = pi.cell_start_of_vertex(inc.to);
                if (pi.cell_size(q) == 1 && !is_candidate(q))
                    links.push_back({q, inc.attr});
            }
            std::sort(links.begin(), links.end());
            for (auto [q, attr] : links) {
                value.push_back(static_cast<std::uint64_t>(q));
                value.push_back(attr);
            }
            if (coord_->emit(cz, node, id_, std::move(value)) ==
                InvariantCoordinator::Outcome::worse)
                return;
        }
    }

private:
    InvariantCoordinator* coord_;
    int id_;
    std::vector<int> buf_;
};

} // namespace ircanon
