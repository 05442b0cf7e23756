#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "core.hpp"

namespace ircanon {

/// Records the explored search tree for statistics and visualization. Nodes
/// are remembered by creation id so the tree can be emitted after the run,
/// when most nodes are long deallocated.
class StatsVisitor final : public Visitor {
public:
    std::string name() const override { return "stats"; }

    struct NodeRec {
        std::uint64_t id = 0;
        std::uint64_t parent_id = 0;
        Vertex individualized = 0;
        std::string partition;
        bool leaf = false;
        bool pruned_during_creation = false;
        bool pruned_later = false;
        bool worse_leaf = false;
        bool former_best = false;
    };

    struct AutRec {
        std::string cycles;
        std::uint64_t from_id = 0;
        std::uint64_t to_id = 0; // 0: implicit (no out-edge)
    };

    struct Data final : VisitorNodeData {
        std::size_t rec = 0;
    };

    std::unique_ptr<VisitorNodeData> make_node_data(const TreeNode&) override {
        return std::make_unique<Data>();
    }

    void tree_init(Canonizer&) override {
        recs_.clear();
        auts_.clear();
        best_id_ = 0;
    }

    void tree_node_create_begin(Canonizer&, TreeNode& node) override {
        node.data<Data>(suite_index()).rec = recs_.size();
        NodeRec r;
        r.id = node.id();
        r.parent_id = node.parent() ? node.parent()->id() : 0;
        r.individualized = node.individualized_vertex();
        recs_.push_back(std::move(r));
    }

    void tree_node_create_end(Canonizer&, TreeNode& node) override {
        NodeRec& r = rec_of(node);
        r.partition = node.pi().render();
        r.leaf = node.pi().discrete();
        r.pruned_during_creation = node.is_pruned();
    }

    void node_pruned(Canonizer&, TreeNode& node) override {
        NodeRec& r = rec_of(node);
        r.pruned_later = true;
        if (r.id == best_id_) {
            r.former_best = true;
            best_id_ = 0;
        }
    }

    void leaf_result(Canonizer&, TreeNode& leaf, LeafOutcome outcome) override {
        NodeRec& r = rec_of(leaf);
        switch (outcome) {
        case LeafOutcome::first_leaf:
        case LeafOutcome::new_best:
            if (best_id_ != 0)
                recs_[index_of(best_id_)].former_best = true;
            best_id_ = r.id;
            break;
        case LeafOutcome::worse:
            r.worse_leaf = true;
            break;
        case LeafOutcome::equal:
            break;
        }
    }

    void isomorphic_leaf(Canonizer& cz, TreeNode& leaf, const Permutation& aut) override {
        auts_.push_back({aut.to_cycle_string(), leaf.id(),
                         cz.canon_leaf() ? cz.canon_leaf()->id() : 0});
    }

    void implicit_automorphism(Canonizer&, TreeNode& origin, const Permutation& aut) override {
        auts_.push_back({aut.to_cycle_string(), origin.id(), 0});
    }

    void append_stats(std::vector<std::pair<std::string, std::string>>& out) const override {
        out.emplace_back("stats.nodes-recorded", std::to_string(recs_.size()));
        out.emplace_back("stats.automorphisms", std::to_string(auts_.size()));
    }

    const std::vector<NodeRec>& nodes() const { return recs_; }
    const std::vector<AutRec>& automorphisms() const { return auts_; }
    std::uint64_t final_best_id() const { return best_id_; }

    /// Annotated DOT rendering of the explored search tree.
    void write_dot(std::ostream& os) const {
        os << "// search tree\n"
           << "// legend: red = pruned during creation, purple = pruned via\n"
           << "// pruneTree, brown = worse leaf, lightgreen = former best leaf,\n"
           << "// darkgreen = canonical leaf, gray = automorphism (in-edge from\n"
           << "// the discovering leaf, out-edge to the best leaf for explicit\n"
           << "// automorphisms)\n"
           << "digraph searchtree {\n"
           << "  node [shape=box, style=filled, fillcolor=white];\n";
        for (const NodeRec& r : recs_) {
            os << "  n" << r.id << " [label=\"" << r.id << ": " << escape(r.partition) << "\"";
            const char* color = nullptr;
            if (r.id == best_id_)
                color = "darkgreen";
            else if (r.former_best)
                color = "lightgreen";
            else if (r.worse_leaf)
                color = "brown";
            else if (r.pruned_during_creation)
                color = "red";
            else if (r.pruned_later)
                color = "purple";
            if (color)
                os << ", fillcolor=" << color;
            os << "];\n";
            if (r.parent_id != 0)
                os << "  n" << r.parent_id << " -> n" << r.id << " [label=\"" << r.individualized
                   << "\"];\n";
        }
        for (std::size_t i = 0; i < auts_.size(); ++i) {
            os << "  aut" << i << " [label=\"aut = " << escape(auts_[i].cycles)
               << "\", fillcolor=gray, shape=ellipse];\n";
            os << "  n" << auts_[i].from_id << " -> aut" << i << ";\n";
            if (auts_[i].to_id != 0)
                os << "  aut" << i << " -> n" << auts_[i].to_id << ";\n";
        }
        os << "}\n";
    }

private:
    NodeRec& rec_of(TreeNode& node) { return recs_[node.data<Data>(suite_index()).rec]; }

    std::size_t index_of(std::uint64_t id) const {
        // ids are creation-ordered and recs_ is append-only
        return static_cast<std::size_t>(id - recs_.front().id);
    }

    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\')
                out.push_back('\\');
            out.push_back(c);
        }
        return out;
    }

    std::vector<NodeRec> recs_;
    std::vector<AutRec> auts_;
    std::uint64_t best_id_ = 0;
};

/// Tracks node allocation over time: one (total created, currently allocated)
/// row per node creation, plus a final row at the end of the run. The rows
/// plot directly.
class AllocTraceVisitor final : public Visitor {
public:
    std::string name() const override { return "alloc-trace"; }

    void tree_init(Canonizer&) override {
        rows_.clear();
        created_ = 0;
        alive_ = 0;
        peak_ = 0;
    }

    void tree_node_create_begin(Canonizer&, TreeNode&) override {
        ++created_;
        ++alive_;
        peak_ = std::max(peak_, alive_);
        rows_.push_back({created_, alive_});
    }

    void tree_node_destroy(Canonizer&, TreeNode&) override { --alive_; }

    void run_end(Canonizer&) override { rows_.push_back({created_, alive_}); }

    void append_stats(std::vector<std::pair<std::string, std::string>>& out) const override {
        out.emplace_back("alloc.peak", std::to_string(peak_));
    }

    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& rows() const { return rows_; }
    std::uint64_t peak_allocated() const { return peak_; }

    void write(std::ostream& os) const {
        for (auto [total, alive] : rows_)
            os << total << ' ' << alive << '\n';
    }

private:
    std::vector<std::pair<std::uint64_t, std::uint64_t>> rows_;
    std::uint64_t created_ = 0;
    std::uint64_t alive_ = 0;
    std::uint64_t peak_ = 0;
};

} // namespace ircanon
