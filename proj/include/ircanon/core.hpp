#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "partition.hpp"
#include "perm_group.hpp"
#include "permutation.hpp"
#include "visitor.hpp"

namespace ircanon {

class TreeNode;
class Canonizer;

void node_add_ref(TreeNode* n);
void node_release(TreeNode* n);

/// Owning reference to a tree node. Nodes own their parents; parents hold
/// only non-owning child references, so destruction cascades rootward.
class NodePtr {
public:
    NodePtr() = default;
    explicit NodePtr(TreeNode* n) : p_(n) {
        if (p_)
            node_add_ref(p_);
    }
    NodePtr(const NodePtr& o) : p_(o.p_) {
        if (p_)
            node_add_ref(p_);
    }
    NodePtr(NodePtr&& o) noexcept : p_(o.p_) { o.p_ = nullptr; }
    NodePtr& operator=(const NodePtr& o) {
        NodePtr tmp(o);
        std::swap(p_, tmp.p_);
        return *this;
    }
    NodePtr& operator=(NodePtr&& o) noexcept {
        std::swap(p_, o.p_);
        return *this;
    }
    ~NodePtr() {
        if (p_)
            node_release(p_);
    }

    TreeNode* get() const { return p_; }
    TreeNode& operator*() const { return *p_; }
    TreeNode* operator->() const { return p_; }
    explicit operator bool() const { return p_ != nullptr; }

    void reset() {
        if (p_)
            node_release(p_);
        p_ = nullptr;
    }

    /// Give up the raw pointer without touching the reference count.
    TreeNode* detach() {
        TreeNode* r = p_;
        p_ = nullptr;
        return r;
    }

private:
    TreeNode* p_ = nullptr;
};

/// One individualization-refinement search node. The sequence of
/// individualized vertices from the root down to a node identifies it.
class TreeNode {
public:
    TreeNode(Canonizer& owner, NodePtr parent, OrderedPartition pi, Vertex individualized)
        : owner_(&owner),
          parent_(std::move(parent)),
          pi_(std::move(pi)),
          individualized_vertex_(individualized),
          depth_(parent_ ? parent_->depth_ + 1 : 0) {
        ++live_instances;
    }
    ~TreeNode() { --live_instances; }
    TreeNode(const TreeNode&) = delete;
    TreeNode& operator=(const TreeNode&) = delete;

    Canonizer& owner() const { return *owner_; }
    TreeNode* parent() const { return parent_.get(); }
    const OrderedPartition& pi() const { return pi_; }
    OrderedPartition& mutable_pi() { return pi_; }
    Vertex individualized_vertex() const { return individualized_vertex_; }
    int depth() const { return depth_; }
    std::uint64_t id() const { return id_; }
    bool is_pruned() const { return pruned_; }
    void set_pruned() { pruned_ = true; }

    bool has_target_cell() const { return tc_size_ > 0; }
    int target_cell_start() const { return tc_start_; }
    int target_cell_size() const { return tc_size_; }
    /// Vertex in the given slot of the target cell (0-based slot).
    Vertex target_vertex(int slot) const {
        assert(slot >= 0 && slot < tc_size_);
        return pi_.element(tc_start_ + slot);
    }
    int slot_of(Vertex w) const {
        int slot = pi_.position(w) - tc_start_;
        assert(slot >= 0 && slot < tc_size_);
        return slot;
    }

    TreeNode* child(int slot) const {
        assert(slot >= 0 && slot < tc_size_);
        return children_[static_cast<std::size_t>(slot)];
    }
    bool child_pruned(int slot) const {
        assert(slot >= 0 && slot < tc_size_);
        return child_pruned_[static_cast<std::size_t>(slot)] != 0;
    }
    void mark_child_pruned(int slot) {
        assert(slot >= 0 && slot < tc_size_);
        child_pruned_[static_cast<std::size_t>(slot)] = 1;
    }

    /// Individualized vertices from the root down to this node.
    std::vector<Vertex> individualization_sequence() const {
        std::vector<Vertex> seq(static_cast<std::size_t>(depth_));
        const TreeNode* t = this;
        for (int i = depth_ - 1; i >= 0; --i) {
            seq[static_cast<std::size_t>(i)] = t->individualized_vertex_;
            t = t->parent_.get();
        }
        return seq;
    }

    template <typename T>
    T& data(int visitor_index) const {
        auto* d = data_[static_cast<std::size_t>(visitor_index)].get();
        assert(d != nullptr);
        return *static_cast<T*>(d);
    }

    static inline std::size_t live_instances = 0;

private:
    friend class Canonizer;
    friend void node_add_ref(TreeNode*);
    friend void node_release(TreeNode*);

    Canonizer* owner_;
    NodePtr parent_;
    OrderedPartition pi_;
    Vertex individualized_vertex_ = 0; // 0 for the root
    int depth_ = 0;
    std::uint64_t id_ = 0;
    bool pruned_ = false;
    int tc_start_ = 0;
    int tc_size_ = 0;
    std::vector<TreeNode*> children_;    // non-owning, one per target cell slot
    std::vector<char> child_pruned_;
    std::vector<std::unique_ptr<VisitorNodeData>> data_;
    int refs_ = 0;
};

/// Ordered collection of visitors sharing one search tree. Enforces that
/// exactly one visitor traverses and exactly one selects target cells.
class VisitorSuite {
public:
    VisitorSuite() = default;
    VisitorSuite(VisitorSuite&&) = default;
    VisitorSuite& operator=(VisitorSuite&&) = default;

    Visitor& add(std::unique_ptr<Visitor> v) {
        v->suite_index_ = static_cast<int>(visitors_.size());
        visitors_.push_back(std::move(v));
        return *visitors_.back();
    }

    template <typename V, typename... Args>
    V& emplace(Args&&... args) {
        auto v = std::make_unique<V>(std::forward<Args>(args)...);
        V& ref = *v;
        add(std::move(v));
        return ref;
    }

    void validate() const {
        int traversals = 0;
        int selectors = 0;
        for (const auto& v : visitors_) {
            traversals += v->can_traverse() ? 1 : 0;
            selectors += v->can_select_target_cell() ? 1 : 0;
        }
        if (traversals != 1)
            throw std::invalid_argument("visitor suite needs exactly one tree traversal visitor");
        if (selectors != 1)
            throw std::invalid_argument("visitor suite needs exactly one target cell visitor");
    }

    Visitor& traversal() const {
        for (const auto& v : visitors_)
            if (v->can_traverse())
                return *v;
        throw std::logic_error("no traversal visitor");
    }
    Visitor& selector() const {
        for (const auto& v : visitors_)
            if (v->can_select_target_cell())
                return *v;
        throw std::logic_error("no target cell visitor");
    }

    std::size_t size() const { return visitors_.size(); }
    Visitor& operator[](std::size_t i) const { return *visitors_[i]; }

    auto begin() const { return visitors_.begin(); }
    auto end() const { return visitors_.end(); }

private:
    std::vector<std::unique_ptr<Visitor>> visitors_;
};

/// Per-run results.
struct RunReport {
    Permutation canonical;   // input vertex -> canonical index
    std::uint64_t canonical_digest = 0;
    std::uint64_t nodes_created = 0;
    std::uint64_t max_allocated = 0;
    std::uint64_t leaves_reported = 0;
    std::vector<Permutation> generators;
    std::vector<std::pair<std::string, std::string>> visitor_stats;
};

class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One canonization run: owns the graph reference, the best-leaf state and
/// the discovered automorphisms, and dispatches events to the visitor suite.
/// Strictly single-threaded; independent runs may proceed in parallel.
class Canonizer {
public:
    Canonizer(const AttributedGraph& g, VisitorSuite& suite)
        : g_(g), suite_(suite), gens_(g.vertex_count()) {
        if (g.vertex_count() < 1)
            throw std::invalid_argument("cannot canonize the empty graph");
        suite.validate();
    }

    ~Canonizer() { canon_leaf_.reset(); }

    const AttributedGraph& graph() const { return g_; }
    VisitorSuite& suite() const { return suite_; }

    /// Run the search and return the canonical permutation plus statistics.
    /// Applying the permutation to the input graph yields the canonical form.
    RunReport run() {
        for (const auto& v : suite_)
            v->tree_init(*this);
        NodePtr root = make_tree_node(NodePtr(), OrderedPartition::initial(g_), 0);
        if (!root)
            throw std::logic_error("the root node was pruned during creation");
        suite_.traversal().traverse(*this, *root);
        if (!canon_leaf_)
            throw std::logic_error("the search ended without a canonical leaf");
        RunReport report;
        report.canonical = canon_leaf_->pi().as_permutation().inverse();
        report.canonical_digest = representation_digest(*canon_form_);
        report.nodes_created = created_;
        report.max_allocated = max_alive_;
        report.leaves_reported = leaves_;
        report.generators = gens_.all();
        for (const auto& v : suite_)
            v->run_end(*this);
        for (const auto& v : suite_)
            v->append_stats(report.visitor_stats);
        return report;
    }

    // ---- framework services used by visitors ----

    /// Individualize w under parent and build the node. Returns null and
    /// marks the child slot when the creation was pruned.
    NodePtr make_child(TreeNode& parent, Vertex w) {
        int slot = parent.slot_of(w);
        assert(!parent.child_pruned(slot));
        assert(parent.child(slot) == nullptr);
        NodePtr child = make_tree_node(NodePtr(&parent), parent.pi().individualize(w), w);
        if (!child)
            parent.mark_child_pruned(slot);
        else
            parent.children_[static_cast<std::size_t>(slot)] = child.get();
        return child;
    }

    /// Report a discrete node. Adopts, replaces, discards, or fires
    /// isomorphic_leaf depending on the permuted-graph comparison.
    void add_leaf(TreeNode& leaf) {
        assert(leaf.pi().discrete());
        ++leaves_;
        if (!canon_leaf_) {
            canon_leaf_ = NodePtr(&leaf);
            canon_form_ = apply_permutation(g_, leaf.pi().as_permutation().inverse());
            dispatch_leaf_result(leaf, LeafOutcome::first_leaf);
            return;
        }
        AttributedGraph form = apply_permutation(g_, leaf.pi().as_permutation().inverse());
        auto cmp = compare_representation(form, *canon_form_);
        if (cmp == std::strong_ordering::less) {
            canon_leaf_ = NodePtr(&leaf);
            canon_form_ = std::move(form);
            dispatch_leaf_result(leaf, LeafOutcome::new_best);
        } else if (cmp == std::strong_ordering::equal) {
            Permutation aut =
                compose(canon_leaf_->pi().as_permutation().inverse(), leaf.pi().as_permutation());
            assert(!aut.is_identity()); // distinct leaves have distinct partitions
            assert(representation_equal(apply_permutation(g_, aut), g_));
            gens_.append(aut);
            dispatch_leaf_result(leaf, LeafOutcome::equal);
            for (const auto& v : suite_)
                v->isomorphic_leaf(*this, leaf, aut);
        } else {
            dispatch_leaf_result(leaf, LeafOutcome::worse);
        }
    }

    /// Flag a whole subtree as pruned without deallocating it. Clears the
    /// best leaf if the subtree contains it.
    void prune_tree(TreeNode& node) {
        if (node.pruned_)
            return;
        node.pruned_ = true;
        for (const auto& v : suite_)
            v->node_pruned(*this, node);
        if (node.pi().discrete()) {
            if (&node == canon_leaf_.get()) {
                canon_leaf_.reset();
                canon_form_.reset();
            }
            return;
        }
        for (int slot = 0; slot < node.target_cell_size(); ++slot) {
            node.mark_child_pruned(slot);
            if (TreeNode* c = node.child(slot))
                prune_tree(*c);
        }
    }

    /// Record and fan out an automorphism deduced at an internal node.
    void report_implicit_automorphism(TreeNode& origin, const Permutation& gamma) {
        if (gamma.is_identity())
            return;
        assert(representation_equal(apply_permutation(g_, gamma), g_));
        gens_.append(gamma);
        for (const auto& v : suite_)
            v->implicit_automorphism(*this, origin, gamma);
    }

    TreeNode* canon_leaf() const { return canon_leaf_.get(); }
    const GeneratorSet& generators() const { return gens_; }

    std::uint64_t nodes_created() const { return created_; }
    std::uint64_t nodes_alive() const { return alive_; }
    std::uint64_t max_alive() const { return max_alive_; }
    std::uint64_t leaves_reported() const { return leaves_; }

    // ---- event dispatch ----

    void dispatch_before_descend(TreeNode& node) {
        for (const auto& v : suite_)
            v->before_descend(*this, node);
    }
    void dispatch_new_cell(TreeNode& node, int position) {
        for (const auto& v : suite_)
            v->new_cell(*this, node, position);
    }
    void dispatch_refine_round_end(TreeNode& node) {
        for (const auto& v : suite_)
            v->refine_round_end(*this, node);
    }
    void dispatch_refine_abort(TreeNode& node) {
        for (const auto& v : suite_)
            v->refine_abort(*this, node);
    }
    void dispatch_leaf_result(TreeNode& node, LeafOutcome outcome) {
        for (const auto& v : suite_)
            v->leaf_result(*this, node, outcome);
    }

private:
    friend void node_release(TreeNode*);

    /// The node constructor of the framework: set fields, dispatch
    /// tree_node_create_begin, refine, select the target cell, dispatch
    /// tree_node_create_end. A pruned creation returns null.
    NodePtr make_tree_node(NodePtr parent, OrderedPartition pi, Vertex individualized) {
        auto* raw = new TreeNode(*this, std::move(parent), std::move(pi), individualized);
        raw->id_ = ++created_;
        ++alive_;
        max_alive_ = std::max(max_alive_, alive_);
        NodePtr node(raw);
        raw->data_.resize(suite_.size());
        for (std::size_t i = 0; i < suite_.size(); ++i)
            raw->data_[i] = suite_[i].make_node_data(*raw);
        for (const auto& v : suite_)
            v->tree_node_create_begin(*this, *raw);
        if (!raw->pruned_) {
            for (const auto& v : suite_) {
                RefineStatus st = v->refine(*this, *raw);
                if (st == RefineStatus::aborted || raw->pruned_)
                    break;
            }
        }
        if (!raw->pruned_ && !raw->pi_.discrete()) {
            int start = suite_.selector().select_target_cell(*this, *raw);
            assert(raw->pi_.cell_start_of(start) == start && raw->pi_.cell_size(start) >= 2);
            raw->tc_start_ = start;
            raw->tc_size_ = raw->pi_.cell_size(start);
            raw->children_.assign(static_cast<std::size_t>(raw->tc_size_), nullptr);
            raw->child_pruned_.assign(static_cast<std::size_t>(raw->tc_size_), 0);
        }
        for (const auto& v : suite_)
            v->tree_node_create_end(*this, *raw);
        if (raw->pruned_)
            return NodePtr();
        return node;
    }

    void destroy_node(TreeNode* n) {
        for (const auto& v : suite_)
            v->tree_node_destroy(*this, *n);
        if (TreeNode* p = n->parent_.get()) {
            int slot = p->slot_of(n->individualized_vertex_);
            p->children_[static_cast<std::size_t>(slot)] = nullptr;
            p->child_pruned_[static_cast<std::size_t>(slot)] = 1;
        }
        --alive_;
    }

    const AttributedGraph& g_;
    VisitorSuite& suite_;
    NodePtr canon_leaf_;
    std::optional<AttributedGraph> canon_form_; // cached form of the best leaf
    GeneratorSet gens_;
    std::uint64_t created_ = 0;
    std::uint64_t alive_ = 0;
    std::uint64_t max_alive_ = 0;
    std::uint64_t leaves_ = 0;
};

inline void node_add_ref(TreeNode* n) {
    ++n->refs_;
}

inline void node_release(TreeNode* n) {
    while (n) {
        if (--n->refs_ > 0)
            return;
        n->owner().destroy_node(n); // dispatches and detaches the parent slot
        TreeNode* parent = n->parent_.detach();
        delete n;
        n = parent;
    }
}

/// Canonize: runs the suite's traversal over the tree rooted at the refined
/// initial partition. The returned permutation maps input vertices to their
/// canonical indices, i.e. the canonical form is G^perm.
inline RunReport canonicalize(const AttributedGraph& g, VisitorSuite& suite) {
    Canonizer c(g, suite);
    return c.run();
}

} // namespace ircanon
