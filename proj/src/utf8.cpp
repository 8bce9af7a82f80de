#include "toklens/utf8.hpp"

#include "toklens/error.hpp"

namespace toklens::utf8 {

int sequence_length(unsigned char lead) noexcept {
    if (lead < 0x80) return 1;
    if (lead >= 0xC2 && lead <= 0xDF) return 2;
    if (lead >= 0xE0 && lead <= 0xEF) return 3;
    if (lead >= 0xF0 && lead <= 0xF4) return 4;
    return 0;
}

namespace {

inline bool is_continuation(unsigned char b) noexcept {
    return (b & 0xC0) == 0x80;
}

}  // namespace

std::size_t find_invalid(std::string_view bytes) noexcept {
    const auto* s = reinterpret_cast<const unsigned char*>(bytes.data());
    std::size_t n = bytes.size();
    std::size_t i = 0;
    while (i < n) {
        unsigned char b0 = s[i];
        int len = sequence_length(b0);
        if (len == 0) return i;
        if (i + static_cast<std::size_t>(len) > n) return i;
        switch (len) {
        case 1:
            break;
        case 2:
            if (!is_continuation(s[i + 1])) return i;
            break;
        case 3: {
            unsigned char b1 = s[i + 1];
            // E0 requires A0..BF (no overlongs), ED requires 80..9F (no surrogates)
            unsigned char lo = (b0 == 0xE0) ? 0xA0 : 0x80;
            unsigned char hi = (b0 == 0xED) ? 0x9F : 0xBF;
            if (b1 < lo || b1 > hi) return i;
            if (!is_continuation(s[i + 2])) return i;
            break;
        }
        case 4: {
            unsigned char b1 = s[i + 1];
            // F0 requires 90..BF, F4 requires 80..8F (scalars <= U+10FFFF)
            unsigned char lo = (b0 == 0xF0) ? 0x90 : 0x80;
            unsigned char hi = (b0 == 0xF4) ? 0x8F : 0xBF;
            if (b1 < lo || b1 > hi) return i;
            if (!is_continuation(s[i + 2]) || !is_continuation(s[i + 3])) return i;
            break;
        }
        }
        i += static_cast<std::size_t>(len);
    }
    return npos;
}

bool is_valid(std::string_view bytes) noexcept {
    return find_invalid(bytes) == npos;
}

void require_valid(std::string_view bytes) {
    std::size_t at = find_invalid(bytes);
    if (at != npos) {
        throw error("utf8", "invalid UTF-8 at byte offset " + std::to_string(at));
    }
}

char32_t decode_at(std::string_view bytes, std::size_t& pos) noexcept {
    const auto* s = reinterpret_cast<const unsigned char*>(bytes.data());
    unsigned char b0 = s[pos];
    int len = sequence_length(b0);
    char32_t cp = 0;
    switch (len) {
    case 1: cp = b0; break;
    case 2: cp = ((b0 & 0x1Fu) << 6) | (s[pos + 1] & 0x3Fu); break;
    case 3:
        cp = ((b0 & 0x0Fu) << 12) | ((s[pos + 1] & 0x3Fu) << 6) | (s[pos + 2] & 0x3Fu);
        break;
    default:
        cp = ((b0 & 0x07u) << 18) | ((s[pos + 1] & 0x3Fu) << 12) |
             ((s[pos + 2] & 0x3Fu) << 6) | (s[pos + 3] & 0x3Fu);
        len = 4;
        break;
    }
    pos += static_cast<std::size_t>(len);
    return cp;
}

std::string encode(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    return out;
}

std::size_t count_scalars(std::string_view bytes) noexcept {
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < bytes.size()) {
        int len = sequence_length(static_cast<unsigned char>(bytes[i]));
        i += static_cast<std::size_t>(len > 0 ? len : 1);
        ++count;
    }
    return count;
}

bool is_whitespace(char32_t cp) noexcept {
    switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
    case 0x20: case 0x85: case 0xA0:
    case 0x1680:
    case 0x2000: case 0x2001: case 0x2002: case 0x2003: case 0x2004:
    case 0x2005: case 0x2006: case 0x2007: case 0x2008: case 0x2009:
    case 0x200A:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F:
    case 0x3000:
        return true;
    default:
        return false;
    }
}

}  // namespace toklens::utf8
