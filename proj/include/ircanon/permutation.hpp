#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace ircanon {

/// A bijection on 1..n. Composition is written left to right:
/// v^(a*b) = (v^a)^b.
class Permutation {
public:
    Permutation() = default;

    /// The identity on 1..n.
    explicit Permutation(int n) : img_(static_cast<std::size_t>(n) + 1) {
        for (int v = 0; v <= n; ++v)
            img_[static_cast<std::size_t>(v)] = v;
    }

    /// From a 1-based image list: images[i-1] is the image of i.
    static Permutation from_images(const std::vector<Vertex>& images) {
        Permutation p(static_cast<int>(images.size()));
        std::vector<char> seen(images.size() + 1, 0);
        for (std::size_t i = 0; i < images.size(); ++i) {
            Vertex w = images[i];
            if (w < 1 || w > static_cast<int>(images.size()) || seen[static_cast<std::size_t>(w)])
                throw std::invalid_argument("image list is not a bijection");
            seen[static_cast<std::size_t>(w)] = 1;
            p.img_[i + 1] = w;
        }
        return p;
    }

    int degree() const { return static_cast<int>(img_.size()) - 1; }

    Vertex operator()(Vertex v) const {
        assert(v >= 1 && v < static_cast<int>(img_.size()));
        return img_[static_cast<std::size_t>(v)];
    }

    bool is_identity() const {
        for (int v = 1; v <= degree(); ++v)
            if (img_[static_cast<std::size_t>(v)] != v)
                return false;
        return true;
    }

    bool fixes(Vertex v) const { return (*this)(v) == v; }

    bool fixes_sequence(std::span<const Vertex> seq) const {
        for (Vertex v : seq)
            if (!fixes(v))
                return false;
        return true;
    }

    Permutation inverse() const {
        Permutation r(degree());
        for (int v = 1; v <= degree(); ++v)
            r.img_[static_cast<std::size_t>(img_[static_cast<std::size_t>(v)])] = v;
        return r;
    }

    /// Right-composition with a transposition: this <- this * (u v).
    void compose_transposition(Vertex u, Vertex v) {
        assert(u != v);
        for (int x = 1; x <= degree(); ++x) {
            Vertex& w = img_[static_cast<std::size_t>(x)];
            if (w == u)
                w = v;
            else if (w == v)
                w = u;
        }
    }

    void reset_identity() {
        for (int v = 0; v <= degree(); ++v)
            img_[static_cast<std::size_t>(v)] = v;
    }

    friend Permutation compose(const Permutation& a, const Permutation& b) {
        if (a.degree() != b.degree())
            throw std::invalid_argument("cannot compose permutations of different degree");
        Permutation r(a.degree());
        for (int v = 1; v <= a.degree(); ++v)
            r.img_[static_cast<std::size_t>(v)] = b(a(v));
        return r;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }

    /// Cycle notation: non-trivial cycles first (ascending by least element),
    /// then fixed points. The identity renders as "(1)".
    std::string to_cycle_string() const {
        if (is_identity())
            return "(1)";
        std::ostringstream os;
        std::vector<char> done(img_.size(), 0);
        std::vector<Vertex> fixed;
        for (int v = 1; v <= degree(); ++v) {
            if (done[static_cast<std::size_t>(v)])
                continue;
            if (fixes(v)) {
                fixed.push_back(v);
                done[static_cast<std::size_t>(v)] = 1;
                continue;
            }
            os << '(' << v;
            done[static_cast<std::size_t>(v)] = 1;
            for (Vertex w = (*this)(v); w != v; w = (*this)(w)) {
                os << ' ' << w;
                done[static_cast<std::size_t>(w)] = 1;
            }
            os << ')';
        }
        for (Vertex v : fixed)
            os << '(' << v << ')';
        return os.str();
    }

    /// Parse cycle notation, e.g. "(1 2 4)(3)". Elements not mentioned are
    /// fixed. Commas are accepted as separators.
    static Permutation parse_cycles(const std::string& text, int n) {
        Permutation p(n);
        std::size_t i = 0;
        auto skip_ws = [&] {
            while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t'))
                ++i;
        };
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        skip_ws();
        while (i < text.size()) {
            if (text[i] != '(')
                throw std::invalid_argument("expected '(' in cycle notation");
            ++i;
            std::vector<Vertex> cyc;
            skip_ws();
            while (i < text.size() && text[i] != ')') {
                if (!std::isdigit(static_cast<unsigned char>(text[i])))
                    throw std::invalid_argument("expected vertex index in cycle notation");
                Vertex v = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                    v = v * 10 + (text[i++] - '0');
                if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
                    throw std::invalid_argument("bad vertex " + std::to_string(v) + " in cycle notation");
                seen[static_cast<std::size_t>(v)] = 1;
                cyc.push_back(v);
                skip_ws();
            }
            if (i >= text.size())
                throw std::invalid_argument("unterminated cycle");
            ++i; // ')'
            for (std::size_t j = 0; j + 1 < cyc.size(); ++j)
                p.img_[static_cast<std::size_t>(cyc[j])] = cyc[j + 1];
            if (cyc.size() > 1)
                p.img_[static_cast<std::size_t>(cyc.back())] = cyc.front();
            skip_ws();
        }
        return p;
    }

private:
    std::vector<Vertex> img_; // img_[0] unused
};

/// G^gamma: edge (u, v, a) maps to (u^gamma, v^gamma, a) and the attribute of
/// v moves to v^gamma.
inline AttributedGraph apply_permutation(const AttributedGraph& g, const Permutation& gamma) {
    if (gamma.degree() != g.vertex_count())
        throw std::invalid_argument("permutation degree does not match graph order");
    const int n = g.vertex_count();
    std::vector<VertexAttr> attrs(static_cast<std::size_t>(n));
    for (Vertex v = 1; v <= n; ++v)
        attrs[static_cast<std::size_t>(gamma(v)) - 1] = g.vertex_attr(v);
    std::vector<EdgeSpec> edges;
    edges.reserve(g.edge_count());
    for (const EdgeSpec& e : g.edges())
        edges.push_back({gamma(e.u), gamma(e.v), e.attr});
    return AttributedGraph::build(n, edges, std::move(attrs));
}

} // namespace ircanon
