#pragma once

#include <algorithm>
#include <utility>
#include <variant>
#include <vector>

#include "tla/common.hpp"

namespace tla {

// A hierarchical tuple: either a single leaf value or a non-empty ordered
// list of subtrees. Shapes, coordinates, strides, tilers and slice
// coordinates are all trees over different leaf types, so the node
// structure is shared here. Values are immutable after construction.
template <class T>
class Tree {
public:
    using children_type = std::vector<Tree>;

    Tree(T leaf) : node_(std::move(leaf)) {}

    explicit Tree(children_type children) : node_(std::move(children)) {
        if (std::get<children_type>(node_).empty())
            throw structural_error("empty tuples are not permitted");
    }

    [[nodiscard]] bool is_leaf() const { return std::holds_alternative<T>(node_); }

    [[nodiscard]] const T& leaf() const { return std::get<T>(node_); }

    [[nodiscard]] const children_type& children() const { return std::get<children_type>(node_); }

    [[nodiscard]] Int rank() const { return is_leaf() ? 1 : static_cast<Int>(children().size()); }

    [[nodiscard]] Int depth() const {
        if (is_leaf()) return 0;
        Int d = 0;
        for (const Tree& c : children()) d = std::max(d, c.depth());
        return 1 + d;
    }

    [[nodiscard]] const Tree& operator[](std::size_t i) const {
        if (is_leaf()) {
            if (i != 0) throw index_error("leaf has a single mode");
            return *this;
        }
        if (i >= children().size()) throw index_error("mode index out of range");
        return children()[i];
    }

    friend bool operator==(const Tree& a, const Tree& b) { return a.node_ == b.node_; }
    friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }

private:
    std::variant<T, children_type> node_;
};

using IntTuple = Tree<Int>;
using Shape = IntTuple;
using Coord = IntTuple;

inline Int rank(const IntTuple& t) { return t.rank(); }
inline Int depth(const IntTuple& t) { return t.depth(); }

// Product of all leaves. For shapes this is the domain size.
inline Int size(const IntTuple& t) {
    if (t.is_leaf()) return t.leaf();
    Int p = 1;
    for (const IntTuple& c : t.children()) p = checked_mul(p, size(c));
    return p;
}

inline void require_shape(const IntTuple& s) {
    if (s.is_leaf()) {
        if (s.leaf() < 1) throw structural_error("shape leaves must be positive");
        return;
    }
    for (const IntTuple& c : s.children()) require_shape(c);
}

// Same profile: both leaves, or equal rank with pairwise congruent children.
template <class A, class B>
bool congruent(const Tree<A>& a, const Tree<B>& b) {
    if (a.is_leaf() || b.is_leaf()) return a.is_leaf() && b.is_leaf();
    if (a.children().size() != b.children().size()) return false;
    for (std::size_t i = 0; i < a.children().size(); ++i)
        if (!congruent(a.children()[i], b.children()[i])) return false;
    return true;
}

// a coarsens b: a leaf matches any subtree of b.
template <class A, class B>
bool weakly_congruent(const Tree<A>& a, const Tree<B>& b) {
    if (a.is_leaf()) return true;
    if (b.is_leaf()) return false;
    if (a.children().size() != b.children().size()) return false;
    for (std::size_t i = 0; i < a.children().size(); ++i)
        if (!weakly_congruent(a.children()[i], b.children()[i])) return false;
    return true;
}

// Profile coarsening that preserves sizes; governs which coordinates a
// shape accepts.
inline bool compatible(const Shape& p, const Shape& s) {
    if (p.is_leaf()) return p.leaf() == size(s);
    if (s.is_leaf()) return false;
    if (p.children().size() != s.children().size()) return false;
    for (std::size_t i = 0; i < p.children().size(); ++i)
        if (!compatible(p.children()[i], s.children()[i])) return false;
    return true;
}

// Colexicographic order: rightmost mode most significant, recursively.
inline bool colex_less(const Coord& a, const Coord& b) {
    if (!congruent(a, b)) throw structural_error("colex_less requires congruent coordinates");
    if (a.is_leaf()) return a.leaf() < b.leaf();
    for (std::size_t i = a.children().size(); i-- > 0;) {
        const Coord& x = a.children()[i];
        const Coord& y = b.children()[i];
        if (x != y) return colex_less(x, y);
    }
    return false;
}

// Natural coordinate of s at colex position i. The final mode absorbs any
// overflow, so i >= size(s) produces an out-of-bounds final coordinate;
// composition and complement rely on this extended domain.
inline Coord idx2crd(Int i, const Shape& s) {
    if (s.is_leaf()) return Coord(i);
    std::vector<Coord> out;
    out.reserve(s.children().size());
    for (std::size_t r = 0; r < s.children().size(); ++r) {
        const Shape& mode = s.children()[r];
        Int extent = size(mode);
        if (r + 1 < s.children().size()) {
            out.push_back(idx2crd(i % extent, mode));
            i /= extent;
        } else {
            out.push_back(idx2crd(i, mode));
        }
    }
    return Coord(std::move(out));
}

// Inverse of idx2crd on in-bounds coordinates. c may coarsen s: an integer
// leaf standing for a whole subtree is its linear index within it.
inline Int crd2idx(const Coord& c, const Shape& s) {
    if (!weakly_congruent(c, s)) throw structural_error("coordinate does not coarsen shape");
    if (c.is_leaf()) return c.leaf();
    Int idx = 0;
    Int scale = 1;
    for (std::size_t r = 0; r < c.children().size(); ++r) {
        idx = checked_add(idx, checked_mul(crd2idx(c.children()[r], s.children()[r]), scale));
        scale = checked_mul(scale, size(s.children()[r]));
    }
    return idx;
}

// Map a coordinate between two coordinate sets of the same size via the
// shared colex position.
inline Coord coordinate_map(const Coord& c, const Shape& from, const Shape& to) {
    if (!compatible(from, to) && !compatible(to, from))
        throw structural_error("shapes are not compatible in either direction");
    return idx2crd(crd2idx(c, from), to);
}

// S̄_r = prod_{k<r} S_k over a flat shape.
inline IntTuple exclusive_prefix_product(const Shape& s) {
    if (depth(s) > 1) throw structural_error("exclusive_prefix_product requires a flat shape");
    if (s.is_leaf()) return IntTuple(1);
    std::vector<IntTuple> out;
    out.reserve(s.children().size());
    Int p = 1;
    for (const IntTuple& c : s.children()) {
        out.push_back(IntTuple(p));
        p = checked_mul(p, c.leaf());
    }
    return IntTuple(std::move(out));
}

template <class T>
void flatten_into(const Tree<T>& t, std::vector<T>& out) {
    if (t.is_leaf()) {
        out.push_back(t.leaf());
    } else {
        for (const Tree<T>& c : t.children()) flatten_into(c, out);
    }
}

template <class T>
std::vector<T> flat_leaves(const Tree<T>& t) {
    std::vector<T> out;
    flatten_into(t, out);
    return out;
}

} // namespace tla
