#pragma once

#include <bit>
#include <cstdint>

#include "tla/common.hpp"
#include "tla/int_tuple.hpp"

namespace tla {

// Stride elements live in one of three integer-semimodules:
//   Int         plain integers under ordinary + and *
//   Basis       scaled coordinate-basis elements a*e_axis
//   Xor         binary masks f_mask under bitwise XOR
// Int(0) is the distinguished Zero, the additive identity of all kinds.
enum class Kind : std::uint8_t { Int, Basis, Xor };

class StrideElem {
public:
    StrideElem(Int v = 0) : kind_(Kind::Int), a_(v) {}

    static StrideElem basis(Int scale, Int axis) {
        if (axis < 0) throw structural_error("basis axis must be non-negative");
        StrideElem e;
        e.kind_ = Kind::Basis;
        e.a_ = scale;
        e.b_ = axis;
        return e;
    }

    static StrideElem xor_mask(Int mask) {
        if (mask < 0) throw structural_error("xor mask must be non-negative");
        StrideElem e;
        e.kind_ = Kind::Xor;
        e.a_ = mask;
        return e;
    }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_int() const { return kind_ == Kind::Int; }
    [[nodiscard]] bool is_basis() const { return kind_ == Kind::Basis; }
    [[nodiscard]] bool is_xor() const { return kind_ == Kind::Xor; }
    [[nodiscard]] bool is_zero() const { return kind_ == Kind::Int && a_ == 0; }

    [[nodiscard]] Int value() const {
        if (!is_int()) throw semimodule_error("not an integer stride");
        return a_;
    }
    [[nodiscard]] Int scale() const {
        if (!is_basis()) throw semimodule_error("not a basis stride");
        return a_;
    }
    [[nodiscard]] Int axis() const {
        if (!is_basis()) throw semimodule_error("not a basis stride");
        return b_;
    }
    [[nodiscard]] Int mask() const {
        if (!is_xor()) throw semimodule_error("not an xor stride");
        return a_;
    }

    friend bool operator==(const StrideElem& x, const StrideElem& y) {
        if (x.is_zero() && y.is_zero()) return true;
        if (x.is_zero() || y.is_zero()) {
            // Zero of any kind equals Int(0); a zero-scale basis or zero mask
            // evaluates to nothing everywhere.
            const StrideElem& other = x.is_zero() ? y : x;
            return other.a_ == 0;
        }
        return x.kind_ == y.kind_ && x.a_ == y.a_ && (x.kind_ != Kind::Basis || x.b_ == y.b_);
    }
    friend bool operator!=(const StrideElem& x, const StrideElem& y) { return !(x == y); }

private:
    Kind kind_ = Kind::Int;
    Int a_ = 0;
    Int b_ = 0;
};

using Stride = Tree<StrideElem>;

inline StrideElem sm_add(const StrideElem& a, const StrideElem& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.kind() != b.kind()) throw semimodule_error("cannot add stride elements of different kinds");
    switch (a.kind()) {
    case Kind::Int:
        return StrideElem(checked_add(a.value(), b.value()));
    case Kind::Xor:
        return StrideElem::xor_mask(a.mask() ^ b.mask());
    case Kind::Basis:
        if (a.axis() != b.axis())
            throw semimodule_error("cannot add basis elements of different axes");
        return StrideElem::basis(checked_add(a.scale(), b.scale()), a.axis());
    }
    throw semimodule_error("unreachable stride kind");
}

// k-fold sum. For Xor, m + m = 0, so the k-fold sum is the parity of k.
inline StrideElem sm_scale(Int k, const StrideElem& m) {
    if (k < 0) throw semimodule_error("sm_scale requires k >= 0");
    switch (m.kind()) {
    case Kind::Int:
        return StrideElem(checked_mul(k, m.value()));
    case Kind::Basis:
        return StrideElem::basis(checked_mul(k, m.scale()), m.axis());
    case Kind::Xor:
        return (k % 2 == 1) ? m : StrideElem(0);
    }
    throw semimodule_error("unreachable stride kind");
}

// Stride scaling used by composition (D'_r = D_r * delta_r). Xor strides are
// never scaled here: composition expands xor modes into binary submodes
// instead (see algebra.hpp), so a request to scale one is a usage error.
inline StrideElem sm_compose_scale(const StrideElem& d, Int k) {
    if (k < 1) throw semimodule_error("sm_compose_scale requires k >= 1");
    switch (d.kind()) {
    case Kind::Int:
        return StrideElem(checked_mul(d.value(), k));
    case Kind::Basis:
        return StrideElem::basis(checked_mul(d.scale(), k), d.axis());
    case Kind::Xor:
        throw semimodule_error("xor strides do not participate in group composition");
    }
    throw semimodule_error("unreachable stride kind");
}

// Evaluation of one mode: natural coordinate c against stride element d.
// An extent-2^n xor mode is the concatenation of n binary submodes with
// masks d, 2d, 4d, ...; a coordinate c therefore contributes the XOR of
// d << i over the set bits of c. On binary submodes (c in {0,1}) this
// coincides with sm_scale, which is the sense in which the inner product
// is still "coordinate times stride".
inline StrideElem eval_leaf(Int c, const StrideElem& d) {
    switch (d.kind()) {
    case Kind::Int:
        return StrideElem(checked_mul(c, d.value()));
    case Kind::Basis:
        if (c < 0) throw structural_error("negative coordinates require integer strides");
        return StrideElem::basis(checked_mul(c, d.scale()), d.axis());
    case Kind::Xor: {
        if (c < 0) throw structural_error("negative coordinates require integer strides");
        unsigned long long acc = 0;
        auto m = static_cast<unsigned long long>(d.mask());
        for (Int bit = 0; (c >> bit) != 0; ++bit) {
            if (bit >= 62 || (m << bit) >= (1ull << 62)) throw overflow_error("xor mask overflow");
            if ((c >> bit) & 1) acc ^= (m << bit);
        }
        return StrideElem::xor_mask(static_cast<Int>(acc));
    }
    }
    throw semimodule_error("unreachable stride kind");
}

// The kind a stride tree lives in; Int(0) leaves are neutral. Mixed
// non-zero kinds are rejected.
inline Kind stride_kind(const Stride& d) {
    Kind k = Kind::Int;
    bool seen = false;
    for (const StrideElem& e : flat_leaves(d)) {
        if (e.is_zero()) continue;
        if (!seen) {
            k = e.kind();
            seen = true;
        } else if (e.kind() != k) {
            throw semimodule_error("stride mixes semimodule kinds");
        }
    }
    return k;
}

// Eq. 6: sum of leaf-wise products. c must coarsen d; a leaf coordinate
// against a stride subtree is expanded by the caller (layout evaluation),
// so here profiles must align leaf-for-leaf once both are descended.
inline StrideElem inner_product(const Coord& c, const Stride& d) {
    if (c.is_leaf() && d.is_leaf()) return eval_leaf(c.leaf(), d.leaf());
    if (c.is_leaf() || d.is_leaf() || c.children().size() != d.children().size())
        throw structural_error("inner_product profiles do not align");
    StrideElem acc(0);
    for (std::size_t i = 0; i < c.children().size(); ++i)
        acc = sm_add(acc, inner_product(c.children()[i], d.children()[i]));
    return acc;
}

} // namespace tla
