#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "tla/common.hpp"
#include "tla/int_tuple.hpp"
#include "tla/layout.hpp"
#include "tla/stride.hpp"

namespace tla {

namespace detail {

class Cursor {
public:
    explicit Cursor(const std::string& text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[nodiscard]] char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    char take() {
        skip_ws();
        if (pos_ >= text_.size()) throw parse_error("unexpected end of input", pos_);
        return text_[pos_++];
    }

    void expect(char c) {
        std::size_t at = pos_;
        if (take() != c) throw parse_error(std::string("expected '") + c + "'", at);
    }

    bool try_take(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Int number() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = pos_ < text_.size() && text_[pos_] == '-';
        if (neg) ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw parse_error("expected an integer", start);
        Int v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = checked_add(checked_mul(v, 10), text_[pos_] - '0');
            ++pos_;
        }
        return neg ? -v : v;
    }

    void done() {
        skip_ws();
        if (pos_ < text_.size()) throw parse_error("trailing characters", pos_);
    }

    [[nodiscard]] std::size_t pos() const { return pos_; }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

inline IntTuple parse_int_tuple_at(Cursor& c) {
    if (c.try_take('(')) {
        std::vector<IntTuple> kids;
        kids.push_back(parse_int_tuple_at(c));
        while (c.try_take(',')) kids.push_back(parse_int_tuple_at(c));
        c.expect(')');
        return IntTuple(std::move(kids));
    }
    return IntTuple(c.number());
}

inline StrideElem parse_stride_elem_at(Cursor& c) {
    if (c.try_take('e')) return StrideElem::basis(1, c.number());
    if (c.try_take('f')) return StrideElem::xor_mask(c.number());
    std::size_t at = c.pos();
    Int v = c.number();
    if (c.try_take('*')) {
        if (!c.try_take('e')) throw parse_error("expected 'e' after '*'", c.pos());
        return StrideElem::basis(v, c.number());
    }
    if (c.peek() == 'e') {
        c.take();
        return StrideElem::basis(v, c.number());
    }
    (void)at;
    return StrideElem(v);
}

inline Stride parse_stride_tuple_at(Cursor& c) {
    if (c.try_take('(')) {
        std::vector<Stride> kids;
        kids.push_back(parse_stride_tuple_at(c));
        while (c.try_take(',')) kids.push_back(parse_stride_tuple_at(c));
        c.expect(')');
        return Stride(std::move(kids));
    }
    return Stride(parse_stride_elem_at(c));
}

inline Layout parse_layout_at(Cursor& c) {
    Shape s = parse_int_tuple_at(c);
    c.expect(':');
    Stride d = parse_stride_tuple_at(c);
    return Layout(std::move(s), std::move(d));
}

} // namespace detail

inline IntTuple parse_int_tuple(const std::string& text) {
    detail::Cursor c(text);
    IntTuple t = detail::parse_int_tuple_at(c);
    c.done();
    return t;
}

inline Layout parse_layout(const std::string& text) {
    detail::Cursor c(text);
    Layout l = detail::parse_layout_at(c);
    c.done();
    return l;
}

// Tiler text: "[a, b, ...]" for a by-mode tuple, or a single layout /
// integer. An integer n stands for the tile n:1.
inline Tiler parse_tiler(const std::string& text) {
    detail::Cursor c(text);
    auto element = [&](auto&& self) -> Tiler {
        if (c.try_take('(')) {
            std::vector<Tiler> kids;
            kids.push_back(self(self));
            while (c.try_take(',')) kids.push_back(self(self));
            c.expect(')');
            return Tiler(std::move(kids));
        }
        Shape s = detail::parse_int_tuple_at(c);
        if (c.peek() == ':') {
            c.take();
            Stride d = detail::parse_stride_tuple_at(c);
            return Tiler(Layout(std::move(s), std::move(d)));
        }
        if (!s.is_leaf()) throw parse_error("integer tile must be a single number", c.pos());
        return tile_of(s.leaf());
    };
    Tiler t = [&] {
        if (c.try_take('[')) {
            std::vector<Tiler> kids;
            kids.push_back(element(element));
            while (c.try_take(',')) kids.push_back(element(element));
            c.expect(']');
            if (kids.size() == 1) return kids[0];
            return Tiler(std::move(kids));
        }
        return element(element);
    }();
    c.done();
    return t;
}

inline std::string format_stride_elem(const StrideElem& e) {
    switch (e.kind()) {
    case Kind::Int:
        return std::to_string(e.value());
    case Kind::Basis:
        if (e.scale() == 0) return "0";
        if (e.scale() == 1) return "e" + std::to_string(e.axis());
        return std::to_string(e.scale()) + "*e" + std::to_string(e.axis());
    case Kind::Xor:
        if (e.mask() == 0) return "0";
        return "f" + std::to_string(e.mask());
    }
    return "?";
}

template <class T, class Fn>
std::string format_tree(const Tree<T>& t, Fn&& leaf) {
    if (t.is_leaf()) return leaf(t.leaf());
    std::string out = "(";
    for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (i) out += ",";
        out += format_tree(t.children()[i], leaf);
    }
    return out + ")";
}

inline std::string format_int_tuple(const IntTuple& t) {
    return format_tree(t, [](Int v) { return std::to_string(v); });
}

inline std::string format_layout(const Layout& l) {
    return format_tree(l.shape(), [](Int v) { return std::to_string(v); }) + ":" +
           format_tree(l.stride(), [](const StrideElem& e) { return format_stride_elem(e); });
}

} // namespace tla
