#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

#include "permutation.hpp"

namespace ircanon {

/// Append-only list of discovered non-identity automorphism generators. The
/// generation counter is the list length; stabilizer filtering is incremental
/// from a remembered generation.
class GeneratorSet {
public:
    explicit GeneratorSet(int n = 0) : n_(n) {}

    std::size_t generation() const { return gens_.size(); }
    std::size_t size() const { return gens_.size(); }
    bool empty() const { return gens_.empty(); }

    const Permutation& operator[](std::size_t i) const { return gens_[i]; }
    const std::vector<Permutation>& all() const { return gens_; }

    /// Identity permutations are never stored.
    void append(Permutation gamma) {
        assert(gamma.degree() == n_);
        if (gamma.is_identity())
            return;
        gens_.push_back(std::move(gamma));
    }

    /// Indices of the generators appended at or after from_generation that fix
    /// every vertex of seq.
    std::vector<std::size_t> filter_stabilizer(std::span<const Vertex> seq,
                                               std::size_t from_generation) const {
        assert(from_generation <= gens_.size());
        std::vector<std::size_t> out;
        for (std::size_t i = from_generation; i < gens_.size(); ++i)
            if (gens_[i].fixes_sequence(seq))
                out.push_back(i);
        return out;
    }

private:
    int n_ = 0;
    std::vector<Permutation> gens_;
};

/// Union-find over 1..n whose class representatives are the class minima.
class OrbitPartition {
public:
    explicit OrbitPartition(int n = 0) : parent_(static_cast<std::size_t>(n) + 1) {
        for (int v = 0; v <= n; ++v)
            parent_[static_cast<std::size_t>(v)] = v;
    }

    int size() const { return static_cast<int>(parent_.size()) - 1; }

    Vertex find(Vertex v) {
        assert(v >= 1 && v < static_cast<int>(parent_.size()));
        Vertex r = v;
        while (parent_[static_cast<std::size_t>(r)] != r)
            r = parent_[static_cast<std::size_t>(r)];
        while (parent_[static_cast<std::size_t>(v)] != r) {
            Vertex next = parent_[static_cast<std::size_t>(v)];
            parent_[static_cast<std::size_t>(v)] = r;
            v = next;
        }
        return r;
    }

    void unite(Vertex u, Vertex v) {
        Vertex ru = find(u);
        Vertex rv = find(v);
        if (ru == rv)
            return;
        if (ru > rv)
            std::swap(ru, rv);
        parent_[static_cast<std::size_t>(rv)] = ru; // keep the minimum as representative
    }

    /// Unite v with v^gamma for every v.
    void merge_under(const Permutation& gamma) {
        for (Vertex v = 1; v <= size(); ++v)
            unite(v, gamma(v));
    }

    bool same_orbit(Vertex u, Vertex v) { return find(u) == find(v); }
    Vertex orbit_min(Vertex v) { return find(v); }

    /// Sorted classes, each sorted ascending. For tests and reports.
    std::vector<std::vector<Vertex>> classes() {
        std::vector<std::vector<Vertex>> by_root(parent_.size());
        for (Vertex v = 1; v <= size(); ++v)
            by_root[static_cast<std::size_t>(find(v))].push_back(v);
        std::vector<std::vector<Vertex>> out;
        for (auto& c : by_root)
            if (!c.empty())
                out.push_back(std::move(c));
        return out;
    }

private:
    std::vector<Vertex> parent_;
};

/// Orbit partition of V under every generator in the set.
inline OrbitPartition orbits_of(const GeneratorSet& gens, int n) {
    OrbitPartition o(n);
    for (std::size_t i = 0; i < gens.size(); ++i)
        o.merge_under(gens[i]);
    return o;
}

} // namespace ircanon
