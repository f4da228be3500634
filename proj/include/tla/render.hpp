#pragma once

#include <string>
#include <vector>

#include "tla/common.hpp"
#include "tla/layout.hpp"
#include "tla/stride.hpp"
#include "tla/text.hpp"

namespace tla {

namespace detail {

inline std::string render_cell(const Layout& l, const Coord& c) {
    if (l.kind() == Kind::Basis) {
        // Coordinate codomain: print the per-axis offsets as a tuple.
        Int naxes = 0;
        for (const FlatMode& m : flat_modes(l))
            if (m.second.is_basis()) naxes = std::max(naxes, m.second.axis() + 1);
        std::vector<Int> axes = layout_eval_axes(l, c);
        axes.resize(static_cast<std::size_t>(std::max<Int>(naxes, 1)), 0);
        std::string out = "(";
        for (std::size_t i = 0; i < axes.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(axes[i]);
        }
        return out + ")";
    }
    StrideElem v = layout_eval(l, c);
    if (v.is_xor()) return std::to_string(v.mask());
    return std::to_string(v.value());
}

} // namespace detail

// A rank-2 layout as a grid of offsets: rows are mode 0, columns mode 1.
inline std::string render_2d(const Layout& l) {
    if (l.rank() != 2) throw structural_error("render_2d requires a rank-2 layout");
    Int rows = size(l.shape()[0]);
    Int cols = size(l.shape()[1]);
    std::vector<std::vector<std::string>> cells(static_cast<std::size_t>(rows));
    std::size_t width = 0;
    for (Int i = 0; i < rows; ++i) {
        for (Int j = 0; j < cols; ++j) {
            std::vector<Coord> c;
            c.emplace_back(i);
            c.emplace_back(j);
            std::string s = detail::render_cell(l, Coord(std::move(c)));
            width = std::max(width, s.size());
            cells[static_cast<std::size_t>(i)].push_back(std::move(s));
        }
    }
    std::string out;
    for (Int i = 0; i < rows; ++i) {
        for (Int j = 0; j < cols; ++j) {
            const std::string& s = cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (j) out += ' ';
            out.append(width - s.size(), ' ');
            out += s;
        }
        out += '\n';
    }
    return out;
}

} // namespace tla
