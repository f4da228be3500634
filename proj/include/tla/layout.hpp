#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tla/common.hpp"
#include "tla/int_tuple.hpp"
#include "tla/stride.hpp"

namespace tla {

// A layout is a shape paired with a congruent stride; it is the function
// from coordinates of the shape to the stride's semimodule, computed as the
// inner product of the natural coordinate with the stride.
class Layout {
public:
    Layout(Shape shape, Stride stride) : shape_(std::move(shape)), stride_(std::move(stride)) {
        require_shape(shape_);
        if (!congruent(shape_, stride_))
            throw structural_error("shape and stride must be congruent");
        (void)stride_kind(stride_); // rejects mixed kinds
    }

    [[nodiscard]] const Shape& shape() const { return shape_; }
    [[nodiscard]] const Stride& stride() const { return stride_; }
    [[nodiscard]] Int rank() const { return shape_.rank(); }
    [[nodiscard]] Int depth() const { return shape_.depth(); }
    [[nodiscard]] Kind kind() const { return stride_kind(stride_); }

    friend bool operator==(const Layout& a, const Layout& b) {
        return a.shape_ == b.shape_ && a.stride_ == b.stride_;
    }
    friend bool operator!=(const Layout& a, const Layout& b) { return !(a == b); }

private:
    Shape shape_;
    Stride stride_;
};

inline Layout make_layout(Shape s, Stride d) { return Layout(std::move(s), std::move(d)); }

inline Int size(const Layout& l) { return size(l.shape()); }
inline Int rank(const Layout& l) { return l.rank(); }
inline Int depth(const Layout& l) { return l.depth(); }

namespace detail {

inline StrideElem eval_rec(const Coord& c, const Shape& s, const Stride& d) {
    if (c.is_leaf()) {
        if (s.is_leaf()) return eval_leaf(c.leaf(), d.leaf());
        // An integer coordinate standing for a whole mode is expanded to the
        // mode's natural coordinate; the last submode absorbs overflow.
        return eval_rec(idx2crd(c.leaf(), s), s, d);
    }
    if (s.is_leaf() || c.children().size() != s.children().size())
        throw structural_error("coordinate does not coarsen layout shape");
    StrideElem acc(0);
    for (std::size_t i = 0; i < c.children().size(); ++i)
        acc = sm_add(acc, eval_rec(c.children()[i], s.children()[i], d.children()[i]));
    return acc;
}

} // namespace detail

inline StrideElem layout_eval(const Layout& l, const Coord& c) {
    return detail::eval_rec(c, l.shape(), l.stride());
}

// Integral-coordinate evaluation (extended domain: i may exceed size).
inline StrideElem layout_eval(const Layout& l, Int i) { return layout_eval(l, Coord(i)); }

// Convenience for integer-codomain layouts.
inline Int eval_int(const Layout& l, Int i) { return layout_eval(l, i).value(); }

namespace detail {

inline void eval_axes_rec(const Coord& c, const Shape& s, const Stride& d, std::vector<Int>& acc) {
    if (c.is_leaf()) {
        if (!s.is_leaf()) {
            eval_axes_rec(idx2crd(c.leaf(), s), s, d, acc);
            return;
        }
        StrideElem v = eval_leaf(c.leaf(), d.leaf());
        if (v.is_zero()) return;
        if (!v.is_basis())
            throw semimodule_error("per-axis evaluation requires coordinate strides");
        auto axis = static_cast<std::size_t>(v.axis());
        if (acc.size() <= axis) acc.resize(axis + 1, 0);
        acc[axis] = checked_add(acc[axis], v.scale());
        return;
    }
    if (s.is_leaf() || c.children().size() != s.children().size())
        throw structural_error("coordinate does not coarsen layout shape");
    for (std::size_t i = 0; i < c.children().size(); ++i)
        eval_axes_rec(c.children()[i], s.children()[i], d.children()[i], acc);
}

} // namespace detail

// Evaluation of a coordinate-stride layout as a per-axis offset vector;
// unlike layout_eval this supports contributions on several axes at once.
inline std::vector<Int> layout_eval_axes(const Layout& l, const Coord& c) {
    std::vector<Int> acc;
    detail::eval_axes_rec(c, l.shape(), l.stride(), acc);
    return acc;
}

using FlatMode = std::pair<Int, StrideElem>;

inline std::vector<FlatMode> flat_modes(const Layout& l) {
    std::vector<Int> ss = flat_leaves(l.shape());
    std::vector<StrideElem> ds = flat_leaves(l.stride());
    std::vector<FlatMode> out;
    out.reserve(ss.size());
    for (std::size_t i = 0; i < ss.size(); ++i) out.emplace_back(ss[i], ds[i]);
    return out;
}

inline Layout from_flat_modes(const std::vector<FlatMode>& modes) {
    if (modes.empty()) return Layout(Shape(1), Stride(StrideElem(0)));
    if (modes.size() == 1) return Layout(Shape(modes[0].first), Stride(modes[0].second));
    std::vector<Shape> ss;
    std::vector<Stride> ds;
    ss.reserve(modes.size());
    ds.reserve(modes.size());
    for (const FlatMode& m : modes) {
        ss.emplace_back(m.first);
        ds.emplace_back(m.second);
    }
    return Layout(Shape(std::move(ss)), Stride(std::move(ds)));
}

inline Layout flatten(const Layout& l) { return from_flat_modes(flat_modes(l)); }

inline Layout concat(const std::vector<Layout>& parts) {
    if (parts.empty()) throw structural_error("cannot concatenate zero layouts");
    Kind k = Kind::Int;
    bool seen = false;
    std::vector<Shape> ss;
    std::vector<Stride> ds;
    for (const Layout& p : parts) {
        for (const StrideElem& e : flat_leaves(p.stride())) {
            if (e.is_zero()) continue;
            if (!seen) {
                k = e.kind();
                seen = true;
            } else if (e.kind() != k) {
                throw semimodule_error("cannot concatenate layouts of different stride kinds");
            }
        }
        ss.push_back(p.shape());
        ds.push_back(p.stride());
    }
    return Layout(Shape(std::move(ss)), Stride(std::move(ds)));
}

inline Layout sublayout(const Layout& l, const std::vector<std::size_t>& path) {
    const Shape* s = &l.shape();
    const Stride* d = &l.stride();
    for (std::size_t i : path) {
        s = &(*s)[i];
        d = &(*d)[i];
    }
    return Layout(*s, *d);
}

inline Layout sublayout(const Layout& l, std::size_t mode) {
    return sublayout(l, std::vector<std::size_t>{mode});
}

namespace detail {

// Whether (s0,d0) followed by (s1,d1) is the same function as (s0*s1, d0).
// Integer and basis strides merge when d1 = s0 * d0; xor strides only merge
// trivially (never here), keeping coalesce conservative for masks.
inline bool mergeable(const FlatMode& m0, const FlatMode& m1) {
    const StrideElem& d0 = m0.second;
    const StrideElem& d1 = m1.second;
    if (d0.is_xor() || d1.is_xor()) return false;
    if (d0.is_int() && d1.is_int()) return d1.value() == checked_mul(m0.first, d0.value());
    if (d0.is_basis() && d1.is_basis())
        return d0.axis() == d1.axis() && d1.scale() == checked_mul(m0.first, d0.scale());
    // One side is Int: only Int(0) can match a basis product of zero.
    if (d0.is_zero()) return d1.is_zero();
    return false;
}

inline std::vector<FlatMode> coalesce_modes(std::vector<FlatMode> modes) {
    std::vector<FlatMode> out;
    for (const FlatMode& m : modes) {
        if (m.first == 1) continue;
        if (!out.empty() && mergeable(out.back(), m)) {
            out.back().first = checked_mul(out.back().first, m.first);
        } else {
            out.push_back(m);
        }
    }
    return out;
}

} // namespace detail

// Rank/depth reduction preserving the function on integral coordinates.
// Size-1 layouts normalize to 1:0.
inline Layout coalesce(const Layout& l) {
    return from_flat_modes(detail::coalesce_modes(flat_modes(l)));
}

// Coalesce modes independently, guided by a profile that coarsens the
// shape: each leaf of the guide marks a mode to coalesce on its own.
inline Layout coalesce_bymode(const Layout& l, const IntTuple& guide) {
    if (!weakly_congruent(guide, l.shape()))
        throw structural_error("coalesce guide must coarsen the layout shape");
    if (guide.is_leaf()) return coalesce(l);
    std::vector<Layout> parts;
    parts.reserve(guide.children().size());
    for (std::size_t i = 0; i < guide.children().size(); ++i)
        parts.push_back(coalesce_bymode(sublayout(l, i), guide.children()[i]));
    std::vector<Shape> ss;
    std::vector<Stride> ds;
    for (const Layout& p : parts) {
        ss.push_back(p.shape());
        ds.push_back(p.stride());
    }
    return Layout(Shape(std::move(ss)), Stride(std::move(ds)));
}

namespace detail {

inline Stride compact_strides(const Shape& s, Int& running) {
    if (s.is_leaf()) {
        StrideElem e(running);
        running = checked_mul(running, s.leaf());
        return Stride(e);
    }
    std::vector<Stride> out;
    out.reserve(s.children().size());
    for (const Shape& c : s.children()) out.push_back(compact_strides(c, running));
    return Stride(std::move(out));
}

} // namespace detail

// The compact colex layout I_S with L(i) = i.
inline Layout identity_layout(const Shape& s) {
    Int running = 1;
    return Layout(s, detail::compact_strides(s, running));
}

// The coordinate-valued identity: top-level mode i maps onto axis i,
// compactly within the mode, so that L(c) = c as a coordinate.
inline Layout coordinate_identity(const Shape& s) {
    if (s.is_leaf()) return Layout(s, Stride(StrideElem::basis(1, 0)));
    std::vector<Stride> out;
    out.reserve(s.children().size());
    for (std::size_t i = 0; i < s.children().size(); ++i) {
        const Shape& mode = s.children()[i];
        Int running = 1;
        Stride ints = detail::compact_strides(mode, running);
        // Reinterpret the compact integer strides as scales on axis i.
        struct Conv {
            Int axis;
            Stride run(const Stride& t) {
                if (t.is_leaf()) return Stride(StrideElem::basis(t.leaf().value(), axis));
                std::vector<Stride> kids;
                for (const Stride& c : t.children()) kids.push_back(run(c));
                return Stride(std::move(kids));
            }
        } conv{static_cast<Int>(i)};
        out.push_back(conv.run(ints));
    }
    return Layout(s, Stride(std::move(out)));
}

// 1 + the maximum offset of an integer-stride layout.
inline Int cosize(const Layout& l) {
    Int acc = 1;
    for (const FlatMode& m : flat_modes(l)) {
        if (!m.second.is_int()) throw semimodule_error("cosize requires integer strides");
        if (m.second.value() < 0) throw semimodule_error("cosize requires non-negative strides");
        acc = checked_add(acc, checked_mul(m.first - 1, m.second.value()));
    }
    return acc;
}

// Per-axis cosize of a coordinate-stride layout.
inline std::vector<Int> cosize_coord(const Layout& l) {
    Int naxes = 0;
    for (const FlatMode& m : flat_modes(l))
        if (m.second.is_basis()) naxes = std::max(naxes, m.second.axis() + 1);
    std::vector<Int> acc(static_cast<std::size_t>(naxes), 1);
    for (const FlatMode& m : flat_modes(l)) {
        if (m.second.is_zero()) continue;
        if (!m.second.is_basis()) throw semimodule_error("cosize_coord requires coordinate strides");
        auto a = static_cast<std::size_t>(m.second.axis());
        acc[a] = checked_add(acc[a], checked_mul(m.first - 1, m.second.scale()));
    }
    return acc;
}

// A tiler is a hierarchical tuple whose leaves are layouts; a plain integer
// tile n is represented as the layout n:1.
using Tiler = Tree<Layout>;

inline Tiler tile_of(Int n) { return Tiler(Layout(Shape(n), Stride(StrideElem(1)))); }

} // namespace tla
