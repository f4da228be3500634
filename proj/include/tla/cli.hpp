#pragma once

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tla/algebra.hpp"
#include "tla/analysis.hpp"
#include "tla/common.hpp"
#include "tla/layout.hpp"
#include "tla/render.hpp"
#include "tla/tensor.hpp"
#include "tla/text.hpp"

namespace tla::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_usage = 2;

inline const char* usage_text =
    "usage: tla <command> [args] [--relaxed-complement] [--render]\n"
    "\n"
    "commands:\n"
    "  eval LAYOUT COORD          evaluate at a coordinate (int or tuple)\n"
    "  print LAYOUT               parse, validate, reprint\n"
    "  coalesce LAYOUT            flatten and merge modes\n"
    "  compose A B                group composition A o B\n"
    "  complement LAYOUT [M]      complement against target M (default cosize)\n"
    "  rinv LAYOUT                right inverse\n"
    "  linv LAYOUT                left inverse\n"
    "  divide A B                 logical divide (B a layout or [tiler])\n"
    "  zipped-divide A TILER      by-mode divide, tiles gathered first\n"
    "  product A B                logical product\n"
    "  blocked-product A B        block-arranged product\n"
    "  raked-product A B          interleave-arranged product\n"
    "  vectorize A B              maximum common vector width\n"
    "  locate A T                 instruction offsets T located in A\n"
    "  linear-form LAYOUT         the layout as a matrix\n"
    "  chain TABLE [i]            layout chain for a function table\n"
    "\n"
    "flags:\n"
    "  --relaxed-complement       floor instead of reject on inexact gaps\n"
    "  --render                   print the result as a 2-D grid\n";

namespace detail {

struct Args {
    std::string command;
    std::vector<std::string> positional;
    bool relaxed = false;
    bool render = false;
};

inline Args split_args(const std::vector<std::string>& argv) {
    Args a;
    for (const std::string& s : argv) {
        if (s == "--relaxed-complement") {
            a.relaxed = true;
        } else if (s == "--render") {
            a.render = true;
        } else if (!s.empty() && s.rfind("--", 0) == 0) {
            throw parse_error("unknown flag " + s, 0);
        } else if (a.command.empty()) {
            a.command = s;
        } else {
            a.positional.push_back(s);
        }
    }
    return a;
}

inline void emit(std::ostream& out, const Layout& l, bool render) {
    if (render) {
        out << render_2d(l);
    } else {
        out << format_layout(l) << "\n";
    }
}

} // namespace detail

// Run one subcommand. Results go to out, diagnostics to err; the return
// value is the process exit status: 0 success, 1 domain error, 2 usage or
// syntax error.
inline int run_command(const std::vector<std::string>& argv, std::ostream& out,
                       std::ostream& err) {
    detail::Args a;
    try {
        a = detail::split_args(argv);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    if (a.command.empty() || a.command == "help" || a.command == "--help") {
        out << usage_text;
        return a.command.empty() ? exit_usage : exit_ok;
    }

    auto need = [&](std::size_t lo, std::size_t hi) {
        if (a.positional.size() < lo || a.positional.size() > hi)
            throw parse_error("wrong number of arguments for " + a.command, 0);
    };

    try {
        const std::string& cmd = a.command;
        if (cmd == "eval") {
            need(2, 2);
            Layout l = parse_layout(a.positional[0]);
            Coord c = parse_int_tuple(a.positional[1]);
            if (l.kind() == Kind::Basis) {
                std::vector<Int> axes = layout_eval_axes(l, c);
                out << "(";
                for (std::size_t i = 0; i < axes.size(); ++i)
                    out << (i ? "," : "") << axes[i];
                if (axes.empty()) out << "0";
                out << ")\n";
            } else {
                StrideElem v = layout_eval(l, c);
                out << (v.is_xor() ? v.mask() : v.value()) << "\n";
            }
        } else if (cmd == "print") {
            need(1, 1);
            detail::emit(out, parse_layout(a.positional[0]), a.render);
        } else if (cmd == "coalesce") {
            need(1, 1);
            detail::emit(out, coalesce(parse_layout(a.positional[0])), a.render);
        } else if (cmd == "compose") {
            need(2, 2);
            detail::emit(out,
                         compose(parse_layout(a.positional[0]), parse_layout(a.positional[1])),
                         a.render);
        } else if (cmd == "complement") {
            need(1, 2);
            Layout l = parse_layout(a.positional[0]);
            Layout r = a.positional.size() == 2
                           ? complement(l, parse_int_tuple(a.positional[1]).leaf(), a.relaxed)
                           : complement(l, a.relaxed);
            detail::emit(out, r, a.render);
        } else if (cmd == "rinv") {
            need(1, 1);
            detail::emit(out, right_inverse(parse_layout(a.positional[0])), a.render);
        } else if (cmd == "linv") {
            need(1, 1);
            detail::emit(out, left_inverse(parse_layout(a.positional[0])), a.render);
        } else if (cmd == "divide") {
            need(2, 2);
            Layout l = parse_layout(a.positional[0]);
            if (!a.positional[1].empty() && a.positional[1][0] == '[') {
                detail::emit(out, zipped_divide(l, parse_tiler(a.positional[1])), a.render);
            } else {
                detail::emit(out, logical_divide(l, parse_layout(a.positional[1])), a.render);
            }
        } else if (cmd == "zipped-divide") {
            need(2, 2);
            detail::emit(
                out, zipped_divide(parse_layout(a.positional[0]), parse_tiler(a.positional[1])),
                a.render);
        } else if (cmd == "product") {
            need(2, 2);
            detail::emit(out,
                         logical_product(parse_layout(a.positional[0]),
                                         parse_layout(a.positional[1])),
                         a.render);
        } else if (cmd == "blocked-product") {
            need(2, 2);
            detail::emit(out,
                         blocked_product(parse_layout(a.positional[0]),
                                         parse_layout(a.positional[1])),
                         a.render);
        } else if (cmd == "raked-product") {
            need(2, 2);
            detail::emit(out,
                         raked_product(parse_layout(a.positional[0]),
                                       parse_layout(a.positional[1])),
                         a.render);
        } else if (cmd == "vectorize") {
            need(2, 2);
            out << max_common_vector(parse_layout(a.positional[0]), parse_layout(a.positional[1]))
                << "\n";
        } else if (cmd == "locate") {
            need(2, 2);
            detail::emit(
                out, locate_offsets(parse_layout(a.positional[0]), parse_layout(a.positional[1])),
                a.render);
        } else if (cmd == "linear-form") {
            need(1, 1);
            LinearForm lf = linear_form(parse_layout(a.positional[0]));
            for (const std::vector<Int>& row : lf.matrix) {
                out << "[";
                for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
                out << "]\n";
            }
        } else if (cmd == "chain") {
            need(1, 2);
            std::vector<Int> table;
            {
                std::stringstream ss(a.positional[0]);
                std::string item;
                while (std::getline(ss, item, ','))
                    table.push_back(parse_int_tuple(item).leaf());
            }
            std::vector<Layout> chain = function_to_chain(table);
            if (a.positional.size() == 2) {
                out << chain_eval(chain, parse_int_tuple(a.positional[1]).leaf()) << "\n";
            } else {
                for (const Layout& l : chain) out << format_layout(l) << "\n";
            }
        } else {
            err << "error: unknown command '" << cmd << "'\n" << usage_text;
            return exit_usage;
        }
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_ok;
}

} // namespace tla::cli
