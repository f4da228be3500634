#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tla/common.hpp"
#include "tla/int_tuple.hpp"
#include "tla/layout.hpp"
#include "tla/stride.hpp"

namespace tla {

namespace detail {

inline bool is_pow2(Int x) { return x > 0 && (x & (x - 1)) == 0; }

inline Int log2_exact(Int x) {
    Int n = 0;
    while (x > 1) {
        x >>= 1;
        ++n;
    }
    return n;
}

// Composition-internal stride scaling. Unlike the public sm_compose_scale,
// xor masks can be scaled by the power-of-two deltas that arise from the
// binary sub-splitting of xor modes: delta * f_m = f_(m << log2 delta).
inline StrideElem scale_elem(const StrideElem& d, Int k) {
    if (d.is_xor()) {
        if (!is_pow2(k)) throw stride_divisibility_error("stride divisibility condition violated: xor mode split at a non-power-of-two boundary");
        return StrideElem::xor_mask(d.mask() << log2_exact(k));
    }
    return sm_compose_scale(d, k);
}

// Modes of A prepared for the base case: coalesced, and with every xor mode
// of extent 2^n expanded into n binary submodes with masks m, 2m, 4m, ...
// The final flat mode governs extended-domain evaluation, so a trailing
// extent-1 mode must survive coalescing: its stride, zero or not, is the
// extension stride of A.
inline std::vector<FlatMode> compose_lhs_modes(const Layout& a) {
    std::vector<FlatMode> flat = flat_modes(a);
    bool tail_held = false;
    FlatMode tail(1, StrideElem(0));
    if (!flat.empty() && flat.back().first == 1) {
        tail = flat.back();
        flat.pop_back();
        tail_held = true;
    }
    std::vector<FlatMode> merged = coalesce_modes(std::move(flat));
    if (tail_held && (merged.empty() || !mergeable(merged.back(), tail))) merged.push_back(tail);
    std::vector<FlatMode> modes;
    for (const FlatMode& m : merged) {
        if (m.second.is_xor() && m.first > 1) {
            if (!is_pow2(m.first))
                throw semimodule_error("xor modes must have power-of-two extents in composition");
            Int mask = m.second.mask();
            for (Int s = m.first; s > 1; s >>= 1) {
                modes.emplace_back(2, StrideElem::xor_mask(mask));
                mask <<= 1;
            }
        } else {
            modes.push_back(m);
        }
    }
    if (modes.empty()) modes.emplace_back(1, StrideElem(0));
    return modes;
}

// Base case A o (s:d) over prepared modes of A. Walks A's modes once,
// dividing out the first d elements and then keeping s of what remains;
// the last mode is unbounded (extended domain).
inline std::vector<FlatMode> compose_leaf(const std::vector<FlatMode>& modes, Int s, Int d) {
    if (s == 1 || d == 0) {
        StrideElem zero(0);
        if (s == 1) return {FlatMode(1, zero)};
        return {FlatMode(s, zero)};
    }
    std::vector<FlatMode> out;
    Int rem_d = d;
    Int rem_s = s;
    for (std::size_t r = 0; r < modes.size() && rem_s > 1; ++r) {
        Int extent = modes[r].first;
        StrideElem stride = modes[r].second;
        bool last = (r + 1 == modes.size());
        if (rem_d > 1) {
            if (last) {
                out.emplace_back(rem_s, scale_elem(stride, rem_d));
                rem_s = 1;
                break;
            }
            if (rem_d >= extent) {
                if (rem_d % extent != 0)
                    throw stride_divisibility_error("stride divisibility condition violated");
                rem_d /= extent;
                continue;
            }
            if (extent % rem_d != 0) {
                // Inexact split is still fine when the whole request fits
                // inside this one mode.
                if (checked_mul(rem_s - 1, rem_d) <= extent - 1) {
                    out.emplace_back(rem_s, scale_elem(stride, rem_d));
                    rem_s = 1;
                    break;
                }
                throw stride_divisibility_error("stride divisibility condition violated");
            }
            extent /= rem_d;
            stride = scale_elem(stride, rem_d);
            rem_d = 1;
        }
        if (last || extent >= rem_s) {
            out.emplace_back(rem_s, stride);
            rem_s = 1;
        } else {
            if (rem_s % extent != 0)
                throw shape_divisibility_error("shape divisibility condition violated");
            out.emplace_back(extent, stride);
            rem_s /= extent;
        }
    }
    if (out.empty()) out.emplace_back(1, StrideElem(0));
    return out;
}

// Undo the binary sub-splitting in xor results: (s0,f_m),(s1,f_(m*s0))
// is the single mode (s0*s1, f_m).
inline std::vector<FlatMode> remerge_xor(std::vector<FlatMode> modes) {
    std::vector<FlatMode> out;
    for (const FlatMode& m : modes) {
        if (!out.empty() && out.back().second.is_xor() && m.second.is_xor() &&
            is_pow2(out.back().first) &&
            m.second.mask() == (out.back().second.mask() << log2_exact(out.back().first))) {
            out.back().first = checked_mul(out.back().first, m.first);
        } else {
            out.push_back(m);
        }
    }
    return out;
}

inline Layout leaf_result(std::vector<FlatMode> modes) {
    return from_flat_modes(remerge_xor(std::move(modes)));
}

// Multi-mode B distributes over A only if the images of B's modes occupy
// segregated stride ranges, so that idx2crd of a sum splits per term.
inline void check_distributive(const Layout& b) {
    std::vector<FlatMode> nontrivial;
    for (const FlatMode& m : flat_modes(b)) {
        if (m.first > 1 && m.second.is_int() && m.second.value() > 0) nontrivial.push_back(m);
    }
    for (std::size_t i = 0; i < nontrivial.size(); ++i) {
        for (std::size_t j = i + 1; j < nontrivial.size(); ++j) {
            Int si = nontrivial[i].first, di = nontrivial[i].second.value();
            Int sj = nontrivial[j].first, dj = nontrivial[j].second.value();
            if (checked_mul(si, di) <= dj || checked_mul(sj, dj) <= di) continue;
            throw non_distributive_error("composition does not distribute: mode images interleave");
        }
    }
}

struct ComposeRec {
    const Layout& a;
    const std::vector<FlatMode>& modes;

    Layout run(const Shape& bs, const Stride& bd) const {
        if (bs.is_leaf()) {
            const StrideElem& d = bd.leaf();
            if (d.is_basis()) {
                // Reductive case: s:(a*e_i) selects mode i of A.
                auto axis = static_cast<std::size_t>(d.axis());
                if (a.shape().is_leaf() ? axis != 0 : axis >= a.shape().children().size())
                    throw semimodule_error("basis stride addresses a mode A does not have");
                Layout sub = sublayout(a, axis);
                return compose_int(sub, bs.leaf(), d.scale());
            }
            if (d.is_xor())
                throw semimodule_error("xor strides are not admissible on the right of composition");
            return leaf_result(compose_leaf(modes, bs.leaf(), d.value()));
        }
        std::vector<Shape> ss;
        std::vector<Stride> ds;
        for (std::size_t i = 0; i < bs.children().size(); ++i) {
            Layout sub = run(bs.children()[i], bd.children()[i]);
            ss.push_back(sub.shape());
            ds.push_back(sub.stride());
        }
        return Layout(Shape(std::move(ss)), Stride(std::move(ds)));
    }

    static Layout compose_int(const Layout& lhs, Int s, Int d) {
        std::vector<FlatMode> lhs_modes = compose_lhs_modes(lhs);
        return leaf_result(compose_leaf(lhs_modes, s, d));
    }
};

} // namespace detail

namespace detail {

// Per-leaf composition is exact for each leaf alone; when B has several
// modes the summed result must still equal A(B(i)) pointwise. Mode images
// that straddle a boundary of A break this, so the combined result is
// re-checked against the definition and rejected on any mismatch.
inline void verify_distributed(const Layout& a, const Layout& b, const Layout& r) {
    for (Int i = 0; i < size(b); ++i) {
        Int v = layout_eval(b, i).value();
        bool match;
        if (a.kind() == Kind::Basis) {
            std::vector<Int> lhs = layout_eval_axes(a, Coord(v));
            std::vector<Int> rhs = layout_eval_axes(r, Coord(i));
            std::size_t n = std::max(lhs.size(), rhs.size());
            lhs.resize(n, 0);
            rhs.resize(n, 0);
            match = lhs == rhs;
        } else {
            match = layout_eval(a, Coord(v)) == layout_eval(r, Coord(i));
        }
        if (!match)
            throw non_distributive_error("composition does not distribute: mode images interleave");
    }
}

} // namespace detail

// Group composition R = A o B with R(c) = A(B(c)). B's hierarchical shape is
// preserved leaf-wise; a leaf may split into a subtuple when it spans
// several modes of A.
inline Layout compose(const Layout& a, const Layout& b) {
    Kind bk = b.kind();
    if (bk == Kind::Xor)
        throw semimodule_error("xor strides are not admissible on the right of composition");
    std::vector<FlatMode> modes = detail::compose_lhs_modes(a);
    std::size_t b_leaves = 0;
    for (const FlatMode& m : flat_modes(b))
        if (m.first > 1) ++b_leaves;
    if (bk == Kind::Int && modes.size() >= 2) detail::check_distributive(b);
    detail::ComposeRec rec{a, modes};
    Layout r = rec.run(b.shape(), b.stride());
    if (bk == Kind::Int && b_leaves >= 2) detail::verify_distributed(a, b, r);
    return r;
}

namespace detail {

template <class Fn>
auto with_mode_context(std::size_t mode, Fn&& fn) {
    auto annotate = [mode](const std::string& what) {
        return what + " (mode " + std::to_string(mode) + ")";
    };
    try {
        return fn();
    } catch (const stride_divisibility_error& e) {
        throw stride_divisibility_error(annotate(e.what()));
    } catch (const shape_divisibility_error& e) {
        throw shape_divisibility_error(annotate(e.what()));
    } catch (const non_distributive_error& e) {
        throw non_distributive_error(annotate(e.what()));
    } catch (const not_complementable_error& e) {
        throw not_complementable_error(annotate(e.what()));
    } catch (const semimodule_error& e) {
        throw semimodule_error(annotate(e.what()));
    } catch (const structural_error& e) {
        throw structural_error(annotate(e.what()));
    }
}

} // namespace detail

// By-mode composition: tile i composes with mode i of A; untouched modes of
// A are kept as they are.
inline Layout compose_bymode(const Layout& a, const Tiler& t) {
    if (t.is_leaf()) return compose(a, t.leaf());
    if (t.rank() > a.rank()) throw structural_error("tiler has more modes than the layout");
    std::vector<Layout> parts;
    for (std::size_t i = 0; i < t.children().size(); ++i) {
        parts.push_back(detail::with_mode_context(
            i, [&] { return compose_bymode(sublayout(a, i), t.children()[i]); }));
    }
    for (std::size_t i = t.children().size(); i < static_cast<std::size_t>(a.rank()); ++i)
        parts.push_back(sublayout(a, i));
    return concat(parts);
}

namespace detail {

struct SortedMode {
    Int extent;
    Int stride;
    Int prefix; // colex position of this mode in the original layout
};

inline std::vector<SortedMode> sorted_nonzero_modes(const Layout& l) {
    std::vector<SortedMode> out;
    Int prefix = 1;
    for (const FlatMode& m : flat_modes(l)) {
        if (!m.second.is_int())
            throw semimodule_error("operation requires integer strides");
        if (m.second.value() < 0)
            throw semimodule_error("operation requires non-negative strides");
        if (m.first > 1 && m.second.value() > 0)
            out.push_back({m.first, m.second.value(), prefix});
        prefix = checked_mul(prefix, m.first);
    }
    std::stable_sort(out.begin(), out.end(), [](const SortedMode& x, const SortedMode& y) {
        return x.stride != y.stride ? x.stride < y.stride : x.extent < y.extent;
    });
    return out;
}

// The gap-filling walk shared by complement (integer and per-axis
// coordinate forms). Emits (shape, stride) gap modes between the sorted
// modes of L and the final mode covering up to target M.
inline std::vector<std::pair<Int, Int>> complement_modes(const std::vector<SortedMode>& sorted,
                                                         Int m_target, bool relaxed) {
    std::vector<std::pair<Int, Int>> out;
    Int covered = 1; // s_(i-1) * d_(i-1), exclusive start 1*1
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i].stride == sorted[i - 1].stride)
            throw not_complementable_error("duplicate strides: layout is not injective");
        Int gap = sorted[i].stride / covered;
        // A fractional gap narrower than one whole copy of the covered
        // region cannot be represented as a mode and is simply dropped; a
        // wider fractional gap is rejected unless the floor rule is on.
        if (sorted[i].stride % covered != 0 && !relaxed && gap >= 2)
            throw not_complementable_error("interior gap is not an exact multiple");
        if (gap < 1) throw not_complementable_error("mode images overlap");
        if (gap > 1) out.emplace_back(gap, covered);
        covered = checked_mul(sorted[i].extent, sorted[i].stride);
    }
    out.emplace_back(ceil_div(std::max<Int>(m_target, 1), covered), covered);
    return out;
}

} // namespace detail

// The complement L*: a layout whose image is strictly increasing, disjoint
// from image(L) away from zero, and large enough that size(L)*size(L*) >= M.
// The final mode is kept even when its shape is 1; its stride marks the
// first offset past the image, which extended-domain users rely on.
inline Layout complement(const Layout& l, Int m_target, bool relaxed = false) {
    Kind k = l.kind();
    if (k == Kind::Xor) throw semimodule_error("complement is undefined for xor strides");
    if (k == Kind::Basis) {
        // Per-axis complement against the per-axis cosize.
        std::map<Int, std::vector<detail::SortedMode>> by_axis;
        Int naxes = 0;
        for (const FlatMode& m : flat_modes(l)) {
            if (m.second.is_zero()) continue;
            naxes = std::max(naxes, m.second.axis() + 1);
            by_axis[m.second.axis()].push_back({m.first, m.second.scale(), 0});
        }
        std::vector<Int> axis_cosize = cosize_coord(l);
        std::vector<Shape> ss;
        std::vector<Stride> ds;
        for (Int axis = 0; axis < naxes; ++axis) {
            auto& modes = by_axis[axis];
            std::vector<detail::SortedMode> nz;
            for (const detail::SortedMode& m : modes)
                if (m.extent > 1 && m.stride > 0) nz.push_back(m);
            std::stable_sort(nz.begin(), nz.end(),
                             [](const detail::SortedMode& x, const detail::SortedMode& y) {
                                 return x.stride != y.stride ? x.stride < y.stride
                                                             : x.extent < y.extent;
                             });
            auto gaps = detail::complement_modes(nz, axis_cosize[static_cast<std::size_t>(axis)],
                                                 relaxed);
            std::vector<Shape> cs;
            std::vector<Stride> cd;
            for (auto& [shape, stride] : gaps) {
                cs.emplace_back(shape);
                cd.emplace_back(StrideElem::basis(stride, axis));
            }
            if (cs.size() == 1) {
                ss.push_back(cs[0]);
                ds.push_back(cd[0]);
            } else {
                ss.emplace_back(std::move(cs));
                ds.emplace_back(std::move(cd));
            }
        }
        if (ss.empty()) return Layout(Shape(1), Stride(StrideElem(0)));
        if (ss.size() == 1) return Layout(ss[0], ds[0]);
        return Layout(Shape(std::move(ss)), Stride(std::move(ds)));
    }
    auto gaps = detail::complement_modes(detail::sorted_nonzero_modes(l), m_target, relaxed);
    std::vector<FlatMode> out;
    Int result_size = 1;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        // Interior size-1 gaps carry no information; the final mode stays.
        if (gaps[i].first == 1 && i + 1 < gaps.size()) continue;
        result_size = checked_mul(result_size, gaps[i].first);
        out.emplace_back(gaps[i].first, StrideElem(gaps[i].second));
    }
    // Dropped fractional gaps can leave the completion too small to reach
    // the target; the floor rule accepts the shortfall, the default rejects.
    if (!relaxed && checked_mul(size(l), result_size) < m_target)
        throw not_complementable_error("complement cannot reach the target size");
    return from_flat_modes(out);
}

inline Layout complement(const Layout& l, bool relaxed = false) {
    // Coordinate layouts complement per axis against per-axis cosizes; the
    // integer target is unused there.
    if (l.kind() == Kind::Basis) return complement(l, Int(0), relaxed);
    return complement(l, cosize(l), relaxed);
}

namespace detail {

struct AxisChain {
    std::vector<FlatMode> modes;
};

inline Layout assemble_axis_chains(std::vector<AxisChain> chains) {
    std::vector<Shape> ss;
    std::vector<Stride> ds;
    for (AxisChain& ch : chains) {
        if (ch.modes.empty()) continue;
        if (ch.modes.size() == 1) {
            ss.emplace_back(ch.modes[0].first);
            ds.emplace_back(ch.modes[0].second);
        } else {
            std::vector<Shape> cs;
            std::vector<Stride> cd;
            for (FlatMode& m : ch.modes) {
                cs.emplace_back(m.first);
                cd.emplace_back(m.second);
            }
            ss.emplace_back(std::move(cs));
            ds.emplace_back(std::move(cd));
        }
    }
    if (ss.empty()) return Layout(Shape(1), Stride(StrideElem(0)));
    if (ss.size() == 1) return Layout(ss[0], ds[0]);
    return Layout(Shape(std::move(ss)), Stride(std::move(ds)));
}

struct BasisMode {
    Int extent;
    Int scale;
    Int prefix;
};

inline std::vector<std::vector<BasisMode>> basis_modes_by_axis(const Layout& l, Int& naxes) {
    naxes = 0;
    for (const FlatMode& m : flat_modes(l))
        if (m.second.is_basis()) naxes = std::max(naxes, m.second.axis() + 1);
    std::vector<std::vector<BasisMode>> by_axis(static_cast<std::size_t>(naxes));
    Int prefix = 1;
    for (const FlatMode& m : flat_modes(l)) {
        if (m.second.is_basis() && m.first > 1 && m.second.scale() > 0)
            by_axis[static_cast<std::size_t>(m.second.axis())].push_back(
                {m.first, m.second.scale(), prefix});
        prefix = checked_mul(prefix, m.first);
    }
    for (auto& modes : by_axis)
        std::stable_sort(modes.begin(), modes.end(), [](const BasisMode& x, const BasisMode& y) {
            return x.scale != y.scale ? x.scale < y.scale : x.extent < y.extent;
        });
    return by_axis;
}

} // namespace detail

// The right-(pseudo)inverse: maximal R with L(R(k)) = k, built from the
// modes of L whose strides form exact prefix products starting at 1.
inline Layout right_inverse(const Layout& l) {
    Kind k = l.kind();
    if (k == Kind::Xor) {
        std::vector<FlatMode> modes;
        for (const FlatMode& m : flat_modes(l))
            if (m.first > 1) modes.push_back(m);
        return from_flat_modes(modes);
    }
    if (k == Kind::Basis) {
        Int naxes = 0;
        auto by_axis = detail::basis_modes_by_axis(l, naxes);
        std::vector<detail::AxisChain> chains(by_axis.size());
        for (std::size_t axis = 0; axis < by_axis.size(); ++axis) {
            Int running = 1;
            for (const detail::BasisMode& m : by_axis[axis]) {
                if (m.scale != running) break;
                chains[axis].modes.emplace_back(m.extent, StrideElem(m.prefix));
                running = checked_mul(running, m.extent);
            }
            chains[axis].modes = detail::coalesce_modes(std::move(chains[axis].modes));
        }
        return detail::assemble_axis_chains(std::move(chains));
    }
    std::vector<FlatMode> out;
    Int running = 1;
    for (const detail::SortedMode& m : detail::sorted_nonzero_modes(l)) {
        if (m.stride != running) break;
        out.emplace_back(m.extent, StrideElem(m.prefix));
        running = checked_mul(running, m.extent);
    }
    return from_flat_modes(detail::coalesce_modes(std::move(out)));
}

// The left-(pseudo)inverse: L-dagger with L-dagger(L(k)) = k for injective L.
// Gaps in the image fold into the result's shapes; offsets before the first
// stride map through a leading stride-0 mode.
inline Layout left_inverse(const Layout& l) {
    Kind k = l.kind();
    if (k == Kind::Xor) return right_inverse(l);
    if (k == Kind::Basis) {
        Int naxes = 0;
        auto by_axis = detail::basis_modes_by_axis(l, naxes);
        std::vector<detail::AxisChain> chains(by_axis.size());
        for (std::size_t axis = 0; axis < by_axis.size(); ++axis) {
            const auto& modes = by_axis[axis];
            for (std::size_t i = 0; i < modes.size(); ++i) {
                if (i > 0 && modes[i].scale == modes[i - 1].scale)
                    throw not_left_invertible_error("duplicate scales on one axis");
                if (i == 0 && modes[i].scale > 1)
                    chains[axis].modes.emplace_back(modes[i].scale, StrideElem(0));
                Int shape;
                if (i + 1 < modes.size()) {
                    if (modes[i + 1].scale % modes[i].scale != 0)
                        throw not_left_invertible_error("scales do not divide");
                    shape = modes[i + 1].scale / modes[i].scale;
                    if (shape < modes[i].extent)
                        throw not_left_invertible_error("mode images overlap");
                } else {
                    shape = modes[i].extent;
                }
                chains[axis].modes.emplace_back(shape, StrideElem(modes[i].prefix));
            }
            chains[axis].modes = detail::coalesce_modes(std::move(chains[axis].modes));
        }
        return detail::assemble_axis_chains(std::move(chains));
    }
    auto modes = detail::sorted_nonzero_modes(l);
    std::vector<FlatMode> out;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (i > 0 && modes[i].stride == modes[i - 1].stride)
            throw not_left_invertible_error("duplicate strides: layout is not injective");
        if (i == 0 && modes[i].stride > 1) out.emplace_back(modes[i].stride, StrideElem(0));
        Int shape;
        if (i + 1 < modes.size()) {
            if (modes[i + 1].stride % modes[i].stride != 0)
                throw not_left_invertible_error("strides do not divide");
            shape = modes[i + 1].stride / modes[i].stride;
            if (shape < modes[i].extent)
                throw not_left_invertible_error("mode images overlap");
        } else {
            shape = modes[i].extent;
        }
        out.emplace_back(shape, StrideElem(modes[i].prefix));
    }
    return from_flat_modes(detail::coalesce_modes(std::move(out)));
}

// A (/) B: rank-2 (A o B, A o B*) -- the elements B selects, then the rest
// in complement order.
inline Layout logical_divide(const Layout& a, const Layout& b) {
    Layout rest = coalesce(complement(b, size(a)));
    Layout tile_part = compose(a, b);
    Layout rest_part = compose(a, rest);
    return concat({tile_part, rest_part});
}

namespace detail {

inline std::pair<Layout, Layout> divide_mode(const Layout& a, const Tiler& t) {
    if (t.is_leaf()) {
        Layout d = logical_divide(a, t.leaf());
        return {sublayout(d, 0), sublayout(d, 1)};
    }
    if (t.rank() > a.rank()) throw structural_error("tiler has more modes than the layout");
    std::vector<Layout> tiles;
    std::vector<Layout> rests;
    for (std::size_t i = 0; i < t.children().size(); ++i) {
        auto [tile, rest] = with_mode_context(
            i, [&] { return divide_mode(sublayout(a, i), t.children()[i]); });
        tiles.push_back(tile);
        rests.push_back(rest);
    }
    for (std::size_t i = t.children().size(); i < static_cast<std::size_t>(a.rank()); ++i)
        rests.push_back(sublayout(a, i));
    return {concat(tiles), concat(rests)};
}

} // namespace detail

// By-mode divide gathering all tile modes first, then all rest modes:
// ((Tile...), (Rest...)).
inline Layout zipped_divide(const Layout& a, const Tiler& t) {
    auto [tile, rest] = detail::divide_mode(a, t);
    return concat({tile, rest});
}

// A (x) B: rank-2 (A, A* o B) -- the tile, and B's arrangement of uniquely
// shifted copies of it. The complement here always uses the floor rule:
// inexact interior gaps shrink the grid's reach instead of rejecting, which
// is what makes products of padded tiles well defined.
inline Layout logical_product(const Layout& a, const Layout& b) {
    Int m_target = checked_mul(size(a), cosize(b));
    Layout grid = compose(complement(a, m_target, /*relaxed=*/true), b);
    return concat({a, grid});
}

namespace detail {

inline Layout zip_product(const Layout& a, const Layout& b, bool raked) {
    if (a.rank() != b.rank())
        throw structural_error("blocked/raked products require equal ranks");
    Int m_target = checked_mul(size(a), cosize(b));
    Layout grid = compose(complement(a, m_target, /*relaxed=*/true), b);
    std::vector<Layout> parts;
    for (std::size_t i = 0; i < static_cast<std::size_t>(a.rank()); ++i) {
        Layout ai = sublayout(a, i);
        Layout gi = sublayout(grid, i);
        parts.push_back(raked ? concat({gi, ai}) : concat({ai, gi}));
    }
    if (parts.size() == 1) return parts[0];
    return concat(parts);
}

} // namespace detail

inline Layout blocked_product(const Layout& a, const Layout& b) {
    return detail::zip_product(a, b, /*raked=*/false);
}

inline Layout raked_product(const Layout& a, const Layout& b) {
    return detail::zip_product(a, b, /*raked=*/true);
}

} // namespace tla
