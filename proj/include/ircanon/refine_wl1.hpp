#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "core.hpp"

namespace ircanon {

enum class SortPath { automatic, comparison };

/// Stable ascending sort of segment members by an integer degree key.
/// Returns the relative offsets (0 < off < size) at which the key changes.
/// The automatic path uses a two-bucket pass for 0/1 keys and counting sort
/// for small keys; the comparison path exists for differential testing.
template <typename KeyFn>
inline std::vector<int> sort_cell_by_degree(std::vector<Vertex>& members, KeyFn&& key,
                                            SortPath path = SortPath::automatic) {
    const int size = static_cast<int>(members.size());
    std::vector<int> cuts;
    if (size < 2)
        return cuts;
    int max_key = 0;
    bool all_equal = true;
    int first_key = key(members[0]);
    for (Vertex v : members) {
        int k = key(v);
        max_key = std::max(max_key, k);
        all_equal = all_equal && k == first_key;
    }
    if (all_equal)
        return cuts;
    if (path == SortPath::automatic && max_key <= 1) {
        // Binary array partition: zeros then ones, both stable.
        std::vector<Vertex> zeros, ones;
        zeros.reserve(members.size());
        for (Vertex v : members)
            (key(v) == 0 ? zeros : ones).push_back(v);
        int boundary = static_cast<int>(zeros.size());
        zeros.insert(zeros.end(), ones.begin(), ones.end());
        members = std::move(zeros);
        cuts.push_back(boundary);
        return cuts;
    }
    if (path == SortPath::automatic && max_key <= 256) {
        // Counting sort over the key range.
        std::vector<int> bucket(static_cast<std::size_t>(max_key) + 2, 0);
        for (Vertex v : members)
            ++bucket[static_cast<std::size_t>(key(v)) + 1];
        for (std::size_t k = 1; k < bucket.size(); ++k)
            bucket[k] += bucket[k - 1];
        std::vector<Vertex> sorted(members.size());
        for (Vertex v : members)
            sorted[static_cast<std::size_t>(bucket[static_cast<std::size_t>(key(v))]++)] = v;
        members = std::move(sorted);
    } else {
        std::stable_sort(members.begin(), members.end(),
                         [&](Vertex a, Vertex b) { return key(a) < key(b); });
    }
    for (int i = 1; i < size; ++i)
        if (key(members[static_cast<std::size_t>(i)]) != key(members[static_cast<std::size_t>(i) - 1]))
            cuts.push_back(i);
    return cuts;
}

namespace detail {

/// The WL-1 work loop with reusable scratch. Splitter cells are identified by
/// their start position; queue membership uses stamps so a removed entry left
/// in the FIFO is skipped when popped.
class Wl1Worker {
public:
    /// Refine pi in place, seeded with the given cell start positions.
    /// on_new_cell(pos) and on_round_end() report progress and return false
    /// to abort (the node became pruned).
    template <typename OnNewCell, typename OnRoundEnd>
    RefineStatus run(const AttributedGraph& g, OrderedPartition& pi,
                     std::span<const int> seed_cells, OnNewCell&& on_new_cell,
                     OnRoundEnd&& on_round_end) {
        const int n = pi.size();
        ensure_size(n);
        const bool attributed = !g.uniform_edge_attrs();
        for (int s : seed_cells)
            push(s);
        bool changed = false;
        bool aborted = false;
        while (!fifo_.empty() && !pi.discrete() && !aborted) {
            int w_start = pop();
            if (w_start == 0)
                break;
            count_toward(g, pi, w_start, attributed);
            collect_affected(pi);
            bool round_split = false;
            for (int cs : affected_) {
                const int size = pi.cell_size(cs);
                members_.assign(static_cast<std::size_t>(size), 0);
                for (int i = 0; i < size; ++i)
                    members_[static_cast<std::size_t>(i)] = pi.element(cs + i);
                std::vector<int> cuts;
                if (attributed) {
                    bool all_equal = true;
                    for (Vertex v : members_)
                        all_equal = all_equal && sig_[static_cast<std::size_t>(v)] ==
                                                     sig_[static_cast<std::size_t>(members_[0])];
                    if (all_equal)
                        continue;
                    std::stable_sort(members_.begin(), members_.end(), [this](Vertex a, Vertex b) {
                        return sig_less(sig_[static_cast<std::size_t>(a)],
                                        sig_[static_cast<std::size_t>(b)]);
                    });
                    for (int i = 1; i < size; ++i)
                        if (sig_[static_cast<std::size_t>(members_[static_cast<std::size_t>(i)])] !=
                            sig_[static_cast<std::size_t>(members_[static_cast<std::size_t>(i) - 1])])
                            cuts.push_back(i);
                } else {
                    cuts = sort_cell_by_degree(
                        members_, [this](Vertex v) { return count_[static_cast<std::size_t>(v)]; });
                    if (cuts.empty())
                        continue;
                }
                for (int& c : cuts)
                    c += cs; // relative offset -> absolute position
                pi.permute_segment(cs, members_);
                pi.split_cell(cs, cuts);
                changed = round_split = true;
                // Queue maintenance: a split queued cell is replaced by all of
                // its fragments; otherwise every fragment except the first of
                // maximum cardinality is enqueued.
                if (stamp_[static_cast<std::size_t>(cs)] != 0) {
                    stamp_[static_cast<std::size_t>(cs)] = 0;
                    push(cs);
                    for (int c : cuts)
                        push(c);
                } else {
                    int best = cs;
                    for (int c : cuts)
                        if (pi.cell_size(c) > pi.cell_size(best))
                            best = c;
                    if (cs != best)
                        push(cs);
                    for (int c : cuts)
                        if (c != best)
                            push(c);
                }
                for (int c : cuts) {
                    if (!on_new_cell(c)) {
                        aborted = true;
                        break;
                    }
                }
                if (aborted)
                    break;
            }
            if (round_split && !aborted && !on_round_end())
                aborted = true;
            reset_counters(attributed);
        }
        drain();
        return aborted ? RefineStatus::aborted : changed ? RefineStatus::changed : RefineStatus::unchanged;
    }

private:
    using Sig = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

    /// Attributed degrees order first by total edge count, so the attributed
    /// refinement stays compatible with plain-degree refinement, then by the
    /// (attribute, count) pairs in attribute order. No hashing anywhere.
    static bool sig_less(const Sig& a, const Sig& b) {
        std::uint64_t ta = 0;
        std::uint64_t tb = 0;
        for (const auto& p : a)
            ta += p.second;
        for (const auto& p : b)
            tb += p.second;
        if (ta != tb)
            return ta < tb;
        return a < b;
    }

    void ensure_size(int n) {
        if (static_cast<int>(stamp_.size()) < n + 1) {
            stamp_.assign(static_cast<std::size_t>(n) + 1, 0);
            count_.assign(static_cast<std::size_t>(n) + 1, 0);
            sig_.assign(static_cast<std::size_t>(n) + 1, {});
            affected_stamp_.assign(static_cast<std::size_t>(n) + 1, 0);
        }
    }

    void push(int cell_start) {
        std::uint64_t s = ++next_stamp_;
        stamp_[static_cast<std::size_t>(cell_start)] = s;
        fifo_.push_back({cell_start, s});
    }

    int pop() {
        while (!fifo_.empty()) {
            auto [pos, s] = fifo_.front();
            fifo_.pop_front();
            if (stamp_[static_cast<std::size_t>(pos)] == s) {
                stamp_[static_cast<std::size_t>(pos)] = 0;
                return pos;
            }
        }
        return 0;
    }

    void drain() {
        for (const auto& [pos, s] : fifo_)
            if (stamp_[static_cast<std::size_t>(pos)] == s)
                stamp_[static_cast<std::size_t>(pos)] = 0;
        fifo_.clear();
    }

    void count_toward(const AttributedGraph& g, const OrderedPartition& pi, int w_start,
                      bool attributed) {
        const int w_end = w_start + pi.cell_size(w_start);
        for (int i = w_start; i < w_end; ++i) {
            for (const Incidence& inc : g.incidences(pi.element(i))) {
                Vertex x = inc.to;
                if (attributed) {
                    auto& s = sig_[static_cast<std::size_t>(x)];
                    if (s.empty())
                        touched_.push_back(x);
                    auto it = std::lower_bound(
                        s.begin(), s.end(), inc.attr_index,
                        [](const auto& p, std::uint32_t a) { return p.first < a; });
                    if (it != s.end() && it->first == inc.attr_index)
                        ++it->second;
                    else
                        s.insert(it, {inc.attr_index, 1});
                } else {
                    if (count_[static_cast<std::size_t>(x)] == 0)
                        touched_.push_back(x);
                    ++count_[static_cast<std::size_t>(x)];
                }
            }
        }
    }

    void collect_affected(const OrderedPartition& pi) {
        affected_.clear();
        ++round_;
        for (Vertex x : touched_) {
            int cs = pi.cell_start_of_vertex(x);
            if (pi.cell_size(cs) < 2)
                continue;
            if (affected_stamp_[static_cast<std::size_t>(cs)] == round_)
                continue;
            affected_stamp_[static_cast<std::size_t>(cs)] = round_;
            affected_.push_back(cs);
        }
        std::sort(affected_.begin(), affected_.end());
    }

    void reset_counters(bool attributed) {
        for (Vertex x : touched_) {
            if (attributed)
                sig_[static_cast<std::size_t>(x)].clear();
            else
                count_[static_cast<std::size_t>(x)] = 0;
        }
        touched_.clear();
    }

    std::deque<std::pair<int, std::uint64_t>> fifo_;
    std::vector<std::uint64_t> stamp_;      // cell start -> live queue stamp (0 = absent)
    std::uint64_t next_stamp_ = 0;
    std::vector<int> count_;                // plain degree counters
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> sig_; // attributed degrees
    std::vector<Vertex> touched_;
    std::vector<int> affected_;
    std::vector<std::uint64_t> affected_stamp_;
    std::uint64_t round_ = 0;
    std::vector<Vertex> members_;
};

} // namespace detail

/// Convenience wrapper for direct use in tests: refine pi with an explicit
/// seed queue and no event sinks.
inline RefineStatus wl1_refine(const AttributedGraph& g, OrderedPartition& pi,
                               std::span<const int> seed_cells) {
    detail::Wl1Worker worker;
    return worker.run(g, pi, seed_cells, [](int) { return true; }, [] { return true; });
}

/// The 1-dimensional Weisfeiler-Leman refinement visitor, generalized to edge
/// attributes (per-splitter degrees become attribute -> count maps, compared
/// lexicographically in attribute order). Every node's refinement is seeded
/// with all cells of its starting partition.
class Wl1Refiner final : public Visitor {
public:
    std::string name() const override { return "wl-1"; }

    RefineStatus refine(Canonizer& cz, TreeNode& node) override {
        if (node.pi().discrete())
            return RefineStatus::unchanged;
        std::vector<int> seeds = node.pi().cell_starts();
        RefineStatus st = worker_.run(
            cz.graph(), node.mutable_pi(), seeds,
            [&](int pos) {
                cz.dispatch_new_cell(node, pos);
                return !node.is_pruned();
            },
            [&] {
                cz.dispatch_refine_round_end(node);
                return !node.is_pruned();
            });
        if (st == RefineStatus::aborted)
            cz.dispatch_refine_abort(node);
        return st;
    }

private:
    detail::Wl1Worker worker_;
};

} // namespace ircanon
