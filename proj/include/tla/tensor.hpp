#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "tla/common.hpp"
#include "tla/int_tuple.hpp"
#include "tla/layout.hpp"
#include "tla/stride.hpp"

namespace tla {

// An accessor supports offset (by a stride element) and dereference.
// Counting accessors dereference to their own position, buffer accessors
// read a shared cell sequence, coordinate accessors accumulate per-axis.
class Accessor {
public:
    enum class Tag { Counting, Buffer, Coordinate };

    static Accessor counting(Int base) {
        Accessor a;
        a.tag_ = Tag::Counting;
        a.pos_ = base;
        return a;
    }

    static Accessor buffer(std::shared_ptr<std::vector<Int>> storage, Int origin = 0) {
        if (!storage) throw contract_error("buffer accessor requires storage");
        Accessor a;
        a.tag_ = Tag::Buffer;
        a.storage_ = std::move(storage);
        a.pos_ = origin;
        return a;
    }

    static Accessor coordinate(std::vector<Int> base) {
        Accessor a;
        a.tag_ = Tag::Coordinate;
        a.coord_ = std::move(base);
        return a;
    }

    [[nodiscard]] Tag tag() const { return tag_; }
    [[nodiscard]] Int position() const { return pos_; }

    [[nodiscard]] Accessor offset(const StrideElem& d) const {
        Accessor a = *this;
        if (d.is_zero()) return a;
        switch (tag_) {
        case Tag::Counting:
        case Tag::Buffer:
            if (d.is_int())
                a.pos_ = checked_add(a.pos_, d.value());
            else if (d.is_xor())
                a.pos_ ^= d.mask();
            else
                throw semimodule_error("integer accessor cannot take a coordinate offset");
            return a;
        case Tag::Coordinate: {
            if (!d.is_basis())
                throw semimodule_error("coordinate accessor offsets with coordinate elements");
            auto axis = static_cast<std::size_t>(d.axis());
            if (a.coord_.size() <= axis) a.coord_.resize(axis + 1, 0);
            a.coord_[axis] = checked_add(a.coord_[axis], d.scale());
            return a;
        }
        }
        throw contract_error("unreachable accessor tag");
    }

    [[nodiscard]] Int deref() const {
        switch (tag_) {
        case Tag::Counting:
            return pos_;
        case Tag::Buffer:
            check_bounds();
            return (*storage_)[static_cast<std::size_t>(pos_)];
        case Tag::Coordinate:
            throw contract_error("coordinate accessor dereferences to a coordinate");
        }
        throw contract_error("unreachable accessor tag");
    }

    [[nodiscard]] const std::vector<Int>& deref_coord() const {
        if (tag_ != Tag::Coordinate)
            throw contract_error("not a coordinate accessor");
        return coord_;
    }

    void store(Int v) const {
        if (tag_ != Tag::Buffer) throw contract_error("only buffer accessors are writable");
        check_bounds();
        (*storage_)[static_cast<std::size_t>(pos_)] = v;
    }

private:
    void check_bounds() const {
        if (pos_ < 0 || pos_ >= static_cast<Int>(storage_->size()))
            throw bounds_error("buffer access out of bounds");
    }

    Tag tag_ = Tag::Counting;
    Int pos_ = 0;
    std::shared_ptr<std::vector<Int>> storage_;
    std::vector<Int> coord_;
};

// T(c) = deref(offset(accessor, layout(c))).
class Tensor {
public:
    Tensor(Accessor accessor, Layout layout)
        : accessor_(std::move(accessor)), layout_(std::move(layout)) {}

    [[nodiscard]] const Accessor& accessor() const { return accessor_; }
    [[nodiscard]] const Layout& layout() const { return layout_; }

    [[nodiscard]] Int operator()(const Coord& c) const {
        return accessor_.offset(layout_eval(layout_, c)).deref();
    }
    [[nodiscard]] Int operator()(Int i) const { return (*this)(Coord(i)); }

    // Coordinate-accessor evaluation: the layout's per-axis offsets applied
    // to the accessor's base coordinate.
    [[nodiscard]] std::vector<Int> eval_coord(const Coord& c) const {
        std::vector<Int> axes = layout_eval_axes(layout_, c);
        std::vector<Int> out = accessor_.deref_coord();
        if (out.size() < axes.size()) out.resize(axes.size(), 0);
        for (std::size_t i = 0; i < axes.size(); ++i) out[i] = checked_add(out[i], axes[i]);
        return out;
    }

    void store(const Coord& c, Int v) const {
        accessor_.offset(layout_eval(layout_, c)).store(v);
    }
    void store(Int i, Int v) const { store(Coord(i), v); }

private:
    Accessor accessor_;
    Layout layout_;
};

// A slice coordinate: integer leaves fix modes, empty leaves keep them.
using SliceCoord = Tree<std::optional<Int>>;

inline SliceCoord keep() { return SliceCoord(std::optional<Int>{}); }
inline SliceCoord fix(Int v) { return SliceCoord(std::optional<Int>{v}); }

namespace detail {

struct SliceResult {
    StrideElem off{0};
    std::optional<std::pair<Shape, Stride>> kept;
};

inline SliceResult slice_rec(const SliceCoord& sc, const Shape& s, const Stride& d) {
    if (sc.is_leaf()) {
        if (!sc.leaf().has_value()) return {StrideElem(0), std::make_pair(s, d)};
        Int v = *sc.leaf();
        if (v < 0 || v >= size(s)) throw index_error("slice coordinate out of bounds");
        return {eval_rec(Coord(v), s, d), std::nullopt};
    }
    if (s.is_leaf() || sc.children().size() != s.children().size())
        throw structural_error("slice coordinate does not coarsen shape");
    StrideElem off(0);
    std::vector<Shape> ss;
    std::vector<Stride> ds;
    for (std::size_t i = 0; i < sc.children().size(); ++i) {
        SliceResult sub = slice_rec(sc.children()[i], s.children()[i], d.children()[i]);
        off = sm_add(off, sub.off);
        if (sub.kept) {
            ss.push_back(sub.kept->first);
            ds.push_back(sub.kept->second);
        }
    }
    if (ss.empty()) return {off, std::nullopt};
    // A mode with a single surviving child stands for that child.
    if (ss.size() == 1) return {off, std::make_pair(ss[0], ds[0])};
    return {off, std::make_pair(Shape(std::move(ss)), Stride(std::move(ds)))};
}

} // namespace detail

// Partial evaluation: the fixed part advances the accessor, the kept part
// becomes the sliced layout with its hierarchy preserved.
inline Tensor slice(const Tensor& t, const SliceCoord& sc) {
    detail::SliceResult r = detail::slice_rec(sc, t.layout().shape(), t.layout().stride());
    Accessor a = t.accessor().offset(r.off);
    if (!r.kept) return Tensor(std::move(a), Layout(Shape(1), Stride(StrideElem(0))));
    return Tensor(std::move(a), Layout(r.kept->first, r.kept->second));
}

// dst(i) = src(i) over the shared integral coordinate space.
inline void copy(const Tensor& src, const Tensor& dst) {
    Int n = size(src.layout());
    if (n != size(dst.layout())) throw contract_error("copy requires equal sizes");
    for (Int i = 0; i < n; ++i) dst.store(i, src(i));
}

namespace detail {

inline Coord pair_coord(Int a, Int b) {
    std::vector<Coord> c;
    c.emplace_back(a);
    c.emplace_back(b);
    return Coord(std::move(c));
}

} // namespace detail

// C(m,n) += A(m,k) * B(n,k), all tensors rank 2 with modes addressed by
// 1-D coordinates.
inline void gemm(const Tensor& a, const Tensor& b, const Tensor& c) {
    if (a.layout().rank() != 2 || b.layout().rank() != 2 || c.layout().rank() != 2)
        throw contract_error("gemm requires rank-2 tensors");
    Int m = size(a.layout().shape()[0]);
    Int n = size(b.layout().shape()[0]);
    Int k = size(a.layout().shape()[1]);
    if (m != size(c.layout().shape()[0]) || n != size(c.layout().shape()[1]) ||
        k != size(b.layout().shape()[1]))
        throw contract_error("gemm mode extents do not agree");
    for (Int i = 0; i < m; ++i) {
        for (Int j = 0; j < n; ++j) {
            Coord cij = detail::pair_coord(i, j);
            Int acc = c(cij);
            for (Int p = 0; p < k; ++p)
                acc = checked_add(acc,
                                  checked_mul(a(detail::pair_coord(i, p)), b(detail::pair_coord(j, p))));
            c.store(cij, acc);
        }
    }
}

} // namespace tla
