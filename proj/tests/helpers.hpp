#pragma once

#include <string>

#include "tla/tla.hpp"

namespace tlatest {

inline tla::Layout L(const std::string& s) { return tla::parse_layout(s); }
inline tla::Coord C(const std::string& s) { return tla::parse_int_tuple(s); }
inline std::string fmt(const tla::Layout& l) { return tla::format_layout(l); }

// Slice coordinates from text, underscores marking kept modes:
// "(2,((0,_),_))" etc.
inline tla::SliceCoord SC(const std::string& s) {
    std::size_t pos = 0;
    auto skip = [&] { while (pos < s.size() && s[pos] == ' ') ++pos; };
    auto rec = [&](auto&& self) -> tla::SliceCoord {
        skip();
        if (s[pos] == '(') {
            ++pos;
            std::vector<tla::SliceCoord> kids;
            kids.push_back(self(self));
            skip();
            while (s[pos] == ',') {
                ++pos;
                kids.push_back(self(self));
                skip();
            }
            ++pos; // ')'
            return tla::SliceCoord(std::move(kids));
        }
        if (s[pos] == '_') {
            ++pos;
            return tla::keep();
        }
        tla::Int v = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') v = v * 10 + (s[pos++] - '0');
        return tla::fix(v);
    };
    return rec(rec);
}

} // namespace tlatest
