#pragma once

#include <string>
#include <vector>

#include "tla/algebra.hpp"
#include "tla/common.hpp"
#include "tla/int_tuple.hpp"
#include "tla/layout.hpp"
#include "tla/stride.hpp"

namespace tla {

// Largest K such that A and B enumerate the same K offsets first, i.e. the
// first K integral coordinates can move as one vector. Computed as the
// stride-1 identity prefix of B o right_inverse(A); any inadmissible step
// falls back to the always-correct scalar answer 1.
inline Int max_common_vector(const Layout& a, const Layout& b) {
    if (size(a) != size(b)) throw contract_error("max_common_vector requires equal sizes");
    try {
        Layout probe = coalesce(compose(b, right_inverse(a)));
        std::vector<FlatMode> modes = flat_modes(probe);
        if (!modes.empty() && modes[0].second == StrideElem(1)) return modes[0].first;
        return 1;
    } catch (const error&) {
        return 1;
    }
}

// The integral coordinates of those first K elements: right_inverse(A)
// truncated to size K.
inline Layout common_sublayout(const Layout& a, const Layout& b) {
    Int k = max_common_vector(a, b);
    return compose(right_inverse(a), Layout(Shape(k), Stride(StrideElem(1))));
}

// Map instruction coordinates to logical coordinates of A: R = Adag o T,
// verified by checking A(R(i)) = T(i) for every i, so every offset T
// produces must exist in A's image at the location R claims.
inline Layout locate_offsets(const Layout& a, const Layout& t) {
    Layout r = [&] {
        try {
            return compose(left_inverse(a), t);
        } catch (const error& e) {
            throw admissibility_error(std::string("offsets cannot be located: ") + e.what());
        }
    }();
    for (Int i = 0; i < size(t); ++i) {
        Int want = layout_eval(t, i).value();
        Int got = layout_eval(a, layout_eval(r, i).value()).value();
        if (got != want)
            throw admissibility_error("offset " + std::to_string(want) + " at instruction index " +
                                      std::to_string(i) + " is not in the image of the layout");
    }
    return r;
}

// A layout as a generalized matrix-vector product: one column per flattened
// mode. Integer strides give a 1 x n row, coordinate strides an axes x n
// integer matrix, xor strides a bit-matrix over F2 with each extent-2^k
// mode expanded into k binary submodes.
struct LinearForm {
    Kind kind = Kind::Int;
    std::vector<Int> extents;              // column domain (post-expansion)
    std::vector<std::vector<Int>> matrix;  // rows x columns
};

inline LinearForm linear_form(const Layout& l) {
    LinearForm lf;
    lf.kind = l.kind();
    std::vector<FlatMode> modes = flat_modes(l);
    switch (lf.kind) {
    case Kind::Int: {
        lf.matrix.emplace_back();
        for (const FlatMode& m : modes) {
            lf.extents.push_back(m.first);
            lf.matrix[0].push_back(m.second.value());
        }
        return lf;
    }
    case Kind::Basis: {
        Int naxes = 0;
        for (const FlatMode& m : modes)
            if (m.second.is_basis()) naxes = std::max(naxes, m.second.axis() + 1);
        lf.matrix.assign(static_cast<std::size_t>(std::max<Int>(naxes, 1)), {});
        for (const FlatMode& m : modes) {
            lf.extents.push_back(m.first);
            for (std::size_t r = 0; r < lf.matrix.size(); ++r)
                lf.matrix[r].push_back(
                    m.second.is_basis() && m.second.axis() == static_cast<Int>(r)
                        ? m.second.scale()
                        : 0);
        }
        return lf;
    }
    case Kind::Xor: {
        std::vector<Int> masks;
        for (const FlatMode& m : modes) {
            if (m.first == 1) continue;
            if (!detail::is_pow2(m.first))
                throw semimodule_error("xor linear forms require power-of-two extents");
            Int mask = m.second.is_zero() ? 0 : m.second.mask();
            for (Int s = m.first; s > 1; s >>= 1) {
                lf.extents.push_back(2);
                masks.push_back(mask);
                mask = checked_mul(mask, 2);
            }
        }
        Int bits = 1;
        for (Int m : masks)
            while (m >= (Int(1) << bits)) ++bits;
        lf.matrix.assign(static_cast<std::size_t>(bits), {});
        for (Int m : masks)
            for (Int r = 0; r < bits; ++r)
                lf.matrix[static_cast<std::size_t>(r)].push_back((m >> r) & 1);
        return lf;
    }
    }
    throw semimodule_error("unreachable stride kind");
}

// matrix * natural coordinate of i, in the form's arithmetic. Exists so
// tests can confirm the matrix reproduces layout evaluation exactly.
inline StrideElem linear_form_apply(const LinearForm& lf, Int i) {
    std::vector<Int> coord(lf.extents.size(), 0);
    for (std::size_t r = 0; r < lf.extents.size(); ++r) {
        if (r + 1 < lf.extents.size()) {
            coord[r] = i % lf.extents[r];
            i /= lf.extents[r];
        } else {
            coord[r] = i;
        }
    }
    if (lf.extents.empty() && i != 0) throw index_error("index out of domain");
    switch (lf.kind) {
    case Kind::Int: {
        Int acc = 0;
        for (std::size_t c = 0; c < coord.size(); ++c)
            acc = checked_add(acc, checked_mul(lf.matrix[0][c], coord[c]));
        return StrideElem(acc);
    }
    case Kind::Basis: {
        StrideElem acc(0);
        for (std::size_t r = 0; r < lf.matrix.size(); ++r) {
            Int v = 0;
            for (std::size_t c = 0; c < coord.size(); ++c)
                v = checked_add(v, checked_mul(lf.matrix[r][c], coord[c]));
            acc = sm_add(acc, StrideElem::basis(v, static_cast<Int>(r)));
        }
        return acc;
    }
    case Kind::Xor: {
        Int acc = 0;
        for (std::size_t r = 0; r < lf.matrix.size(); ++r) {
            Int bit = 0;
            for (std::size_t c = 0; c < coord.size(); ++c)
                bit ^= (lf.matrix[r][c] & coord[c] & 1);
            acc |= bit << r;
        }
        return StrideElem::xor_mask(acc);
    }
    }
    throw semimodule_error("unreachable stride kind");
}

// Any f on Z_N with f(0) = 0 as a chain of layouts under pointwise
// functional composition: a reordering chain sends i to the one-hot index
// 2^(i-1), and a final lookup layout with strides f(1)..f(N-1) reads the
// value off. Extended-domain evaluation carries indices past each shape.
inline std::vector<Layout> function_to_chain(const std::vector<Int>& f) {
    Int n = static_cast<Int>(f.size());
    if (n == 0 || f[0] != 0) throw contract_error("function tables must satisfy f(0) = 0");
    std::vector<Layout> chain;
    if (n == 1) return chain;
    std::vector<FlatMode> lookup;
    for (Int i = 1; i < n; ++i) lookup.emplace_back(2, StrideElem(f[static_cast<std::size_t>(i)]));
    chain.push_back(from_flat_modes(lookup));
    for (Int k = 3; k <= n - 1; ++k) {
        std::vector<FlatMode> step;
        step.emplace_back(k, StrideElem(1));
        step.emplace_back(1, StrideElem(2 * (k - 1)));
        chain.push_back(from_flat_modes(step));
    }
    return chain;
}

// Right-to-left extended-domain evaluation through the chain.
inline Int chain_eval(const std::vector<Layout>& chain, Int i) {
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
        i = layout_eval(*it, i).value();
    return i;
}

} // namespace tla
