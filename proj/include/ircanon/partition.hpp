#pragma once

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "permutation.hpp"

namespace ircanon {

/// An ordered partition of 1..n stored as a contiguous element array in which
/// every cell is a segment. Positions are 1-based. Each search-tree node owns
/// its own copy; there is no undo stack.
class OrderedPartition {
public:
    OrderedPartition() = default;

    /// The unit partition (one cell holding 1..n).
    static OrderedPartition unit(int n) {
        if (n < 1)
            throw std::invalid_argument("partition needs at least one vertex");
        OrderedPartition p;
        p.n_ = n;
        p.elem_.resize(static_cast<std::size_t>(n) + 1);
        p.pos_.resize(static_cast<std::size_t>(n) + 1);
        p.cell_.assign(static_cast<std::size_t>(n) + 1, 1);
        p.cell_size_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (int v = 1; v <= n; ++v) {
            p.elem_[static_cast<std::size_t>(v)] = v;
            p.pos_[static_cast<std::size_t>(v)] = v;
        }
        p.cell_size_[1] = n;
        p.cell_count_ = 1;
        return p;
    }

    /// Vertices grouped by attribute, cells ordered by attribute value.
    static OrderedPartition initial(const AttributedGraph& g) {
        OrderedPartition p = unit(g.vertex_count());
        std::stable_sort(p.elem_.begin() + 1, p.elem_.end(),
                         [&g](Vertex a, Vertex b) { return g.vertex_attr(a) < g.vertex_attr(b); });
        std::vector<int> cuts;
        for (int i = 2; i <= p.n_; ++i)
            if (g.vertex_attr(p.elem_[static_cast<std::size_t>(i)]) !=
                g.vertex_attr(p.elem_[static_cast<std::size_t>(i) - 1]))
                cuts.push_back(i);
        p.reindex_positions(1, p.n_);
        p.split_cell(1, cuts);
        return p;
    }

    /// Parse "[1 2 | 7 8 | 3]"; for tests and tools.
    static OrderedPartition parse(const std::string& text) {
        std::vector<std::vector<Vertex>> cells(1);
        int n = 0;
        for (std::size_t i = 0; i < text.size(); ++i) {
            char c = text[i];
            if (c == '[' || c == ']' || c == ' ' || c == ',')
                continue;
            if (c == '|') {
                cells.emplace_back();
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("bad partition text");
            Vertex v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                v = v * 10 + (text[i++] - '0');
            --i;
            cells.back().push_back(v);
            ++n;
        }
        OrderedPartition p = unit(n);
        int at = 1;
        std::vector<int> cuts;
        for (const auto& cell : cells) {
            if (cell.empty())
                throw std::invalid_argument("empty cell in partition text");
            if (at > 1)
                cuts.push_back(at);
            for (Vertex v : cell) {
                if (v < 1 || v > n)
                    throw std::invalid_argument("vertex out of range in partition text");
                p.elem_[static_cast<std::size_t>(at++)] = v;
            }
        }
        p.reindex_positions(1, n);
        for (int i = 1; i <= n; ++i)
            if (p.pos_[p.elem_[static_cast<std::size_t>(i)]] != i)
                throw std::invalid_argument("partition text is not a permutation of 1..n");
        p.split_cell(1, cuts);
        return p;
    }

    int size() const { return n_; }
    int cell_count() const { return cell_count_; }
    bool discrete() const { return cell_count_ == n_; }

    Vertex element(int position) const {
        assert(position >= 1 && position <= n_);
        return elem_[static_cast<std::size_t>(position)];
    }
    int position(Vertex v) const {
        assert(v >= 1 && v <= n_);
        return pos_[static_cast<std::size_t>(v)];
    }
    /// Start position of the cell containing the given position.
    int cell_start_of(int position) const {
        assert(position >= 1 && position <= n_);
        return cell_[static_cast<std::size_t>(position)];
    }
    int cell_start_of_vertex(Vertex v) const { return cell_start_of(position(v)); }
    int cell_size(int cell_start) const {
        assert(cell_[static_cast<std::size_t>(cell_start)] == cell_start);
        return cell_size_[static_cast<std::size_t>(cell_start)];
    }
    int next_cell(int cell_start) const { return cell_start + cell_size(cell_start); }

    /// Start positions of all cells, ascending.
    std::vector<int> cell_starts() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(cell_count_));
        for (int s = 1; s <= n_; s = next_cell(s))
            out.push_back(s);
        return out;
    }

    int max_cell_size() const {
        int m = 0;
        for (int s = 1; s <= n_; s = next_cell(s))
            m = std::max(m, cell_size(s));
        return m;
    }

    /// 1-based ordinal of each vertex's cell; index 0 unused.
    std::vector<int> cell_index_by_vertex() const {
        std::vector<int> out(static_cast<std::size_t>(n_) + 1, 0);
        int ordinal = 0;
        for (int s = 1; s <= n_; s = next_cell(s)) {
            ++ordinal;
            for (int i = s; i < s + cell_size(s); ++i)
                out[static_cast<std::size_t>(elem_[static_cast<std::size_t>(i)])] = ordinal;
        }
        return out;
    }

    /// pi-down-v: v is moved to the front of its cell, which is split into
    /// {v} and the remainder in original order. Throws if v is in a singleton.
    OrderedPartition individualize(Vertex v) const {
        int p = position(v);
        int s = cell_start_of(p);
        int k = cell_size(s);
        if (k < 2)
            throw std::invalid_argument("cannot individualize a vertex in a singleton cell");
        OrderedPartition out = *this;
        // Rotate v to the front of the segment, preserving the remainder order.
        for (int i = p; i > s; --i)
            out.elem_[static_cast<std::size_t>(i)] = out.elem_[static_cast<std::size_t>(i) - 1];
        out.elem_[static_cast<std::size_t>(s)] = v;
        out.reindex_positions(s, p);
        out.split_cell(s, {s + 1});
        return out;
    }

    /// Replace the segment [start, start+len) with new_order (a permutation of
    /// the same vertices). Used by refiners before cutting.
    void permute_segment(int start, const std::vector<Vertex>& new_order) {
        int len = static_cast<int>(new_order.size());
        assert(start >= 1 && start + len - 1 <= n_);
        for (int i = 0; i < len; ++i)
            elem_[static_cast<std::size_t>(start + i)] = new_order[static_cast<std::size_t>(i)];
        reindex_positions(start, start + len - 1);
    }

    /// Split the cell at cell_start at the given absolute positions (each the
    /// first position of a new fragment, strictly increasing, strictly inside
    /// the segment). Returns the positions of the newly created cells.
    std::vector<int> split_cell(int cell_start, const std::vector<int>& cuts) {
        if (cuts.empty())
            return {};
        int s = cell_start;
        int end = s + cell_size(s); // one past the segment
        int prev = s;
        for (int c : cuts) {
            if (c <= prev || c >= end)
                throw std::invalid_argument("split position outside the cell segment");
            prev = c;
        }
        int frag_start = s;
        std::size_t next_cut = 0;
        for (int i = s; i < end; ++i) {
            if (next_cut < cuts.size() && i == cuts[next_cut]) {
                cell_size_[static_cast<std::size_t>(frag_start)] = i - frag_start;
                frag_start = i;
                ++next_cut;
                ++cell_count_;
            }
            cell_[static_cast<std::size_t>(i)] = frag_start;
        }
        cell_size_[static_cast<std::size_t>(frag_start)] = end - frag_start;
        return cuts;
    }

    /// Discrete partitions double as permutations: cell index j maps to the
    /// vertex in position j.
    Permutation as_permutation() const {
        if (!discrete())
            throw std::invalid_argument("only a discrete partition is a permutation");
        std::vector<Vertex> images(static_cast<std::size_t>(n_));
        for (int j = 1; j <= n_; ++j)
            images[static_cast<std::size_t>(j) - 1] = elem_[static_cast<std::size_t>(j)];
        return Permutation::from_images(images);
    }

    /// "[1 2 | 7 8 9 10 | 3 4 5 6]"
    std::string render() const {
        std::ostringstream os;
        os << '[';
        for (int s = 1; s <= n_; s = next_cell(s)) {
            if (s > 1)
                os << " | ";
            for (int i = s; i < s + cell_size(s); ++i) {
                if (i > s)
                    os << ' ';
                os << elem_[static_cast<std::size_t>(i)];
            }
        }
        os << ']';
        return os.str();
    }

    friend bool operator==(const OrderedPartition& a, const OrderedPartition& b) {
        return a.n_ == b.n_ && a.elem_ == b.elem_ && a.cell_ == b.cell_;
    }

private:
    void reindex_positions(int from, int to) {
        for (int i = from; i <= to; ++i)
            pos_[static_cast<std::size_t>(elem_[static_cast<std::size_t>(i)])] = i;
    }

    int n_ = 0;
    int cell_count_ = 0;
    std::vector<Vertex> elem_;    // position -> vertex
    std::vector<int> pos_;        // vertex -> position
    std::vector<int> cell_;       // position -> cell start
    std::vector<int> cell_size_;  // cell start -> size (valid at starts only)
};

/// True iff fine can be obtained from coarse by only subdividing cells, with
/// the cell order preserved.
inline bool is_finer_or_equal(const OrderedPartition& fine, const OrderedPartition& coarse) {
    if (fine.size() != coarse.size())
        throw std::invalid_argument("partition sizes differ");
    std::vector<int> coarse_ord = coarse.cell_index_by_vertex();
    int prev = 0;
    for (int s = 1; s <= fine.size(); s = fine.next_cell(s)) {
        int ord = coarse_ord[static_cast<std::size_t>(fine.element(s))];
        for (int i = s; i < s + fine.cell_size(s); ++i)
            if (coarse_ord[static_cast<std::size_t>(fine.element(i))] != ord)
                return false; // a fine cell straddles two coarse cells
        if (ord < prev)
            return false; // coarse cell order not preserved
        prev = ord;
    }
    return true;
}

} // namespace ircanon
