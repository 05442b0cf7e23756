#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "permutation.hpp"

namespace ircanon {

/// Brute-force reference implementations. Deliberately dumb: lexicographic
/// enumeration of all permutations, no pruning.

/// The representationally smallest permuted graph over all of S_n.
inline AttributedGraph brute_canon(const AttributedGraph& g) {
    const int n = g.vertex_count();
    if (n > 9)
        throw std::invalid_argument("brute_canon refuses graphs with more than 9 vertices");
    if (n < 1)
        throw std::invalid_argument("brute_canon needs at least one vertex");
    std::vector<Vertex> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 1);
    AttributedGraph best = g;
    do {
        AttributedGraph h = apply_permutation(g, Permutation::from_images(images));
        if (compare_representation(h, best) == std::strong_ordering::less)
            best = std::move(h);
    } while (std::next_permutation(images.begin(), images.end()));
    return best;
}

/// All automorphisms of g, identity included.
inline std::vector<Permutation> brute_aut(const AttributedGraph& g) {
    const int n = g.vertex_count();
    if (n > 8)
        throw std::invalid_argument("brute_aut refuses graphs with more than 8 vertices");
    if (n < 1)
        throw std::invalid_argument("brute_aut needs at least one vertex");
    std::vector<Vertex> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 1);
    std::vector<Permutation> out;
    do {
        Permutation gamma = Permutation::from_images(images);
        if (representation_equal(apply_permutation(g, gamma), g))
            out.push_back(std::move(gamma));
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

} // namespace ircanon
