#pragma once

#include <string>
#include <string_view>

namespace deco::utf8 {

inline bool is_scalar(char32_t c) noexcept {
    return c <= 0x10FFFF && (c < 0xD800 || c > 0xDFFF);
}

/// Appends the UTF-8 encoding of `c` (must be a Unicode scalar value).
inline void append(std::string& out, char32_t c) {
    if (c < 0x80) {
        out += static_cast<char>(c);
    } else if (c < 0x800) {
        out += static_cast<char>(0xC0 | (c >> 6));
        out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
        out += static_cast<char>(0xE0 | (c >> 12));
        out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (c >> 18));
        out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (c & 0x3F));
    }
}

inline std::string encode(char32_t c) {
    std::string out;
    append(out, c);
    return out;
}

inline std::string encode(std::u32string_view text) {
    std::string out;
    for (char32_t c : text) append(out, c);
    return out;
}

}  // namespace deco::utf8
