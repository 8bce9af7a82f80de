#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace toklens::utf8 {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Byte length of the sequence introduced by `lead` (1..4), or 0 if `lead`
/// is not a valid UTF-8 lead byte.
int sequence_length(unsigned char lead) noexcept;

/// Offset of the first byte at which `bytes` stops being valid UTF-8
/// (overlongs, surrogates, and out-of-range scalars rejected), or npos if
/// the whole string is valid.
std::size_t find_invalid(std::string_view bytes) noexcept;

bool is_valid(std::string_view bytes) noexcept;

/// Throws error("utf8", ...) carrying the byte offset if invalid.
void require_valid(std::string_view bytes);

/// Decodes the scalar starting at `pos` and advances `pos` past it.
/// Input must already be valid UTF-8.
char32_t decode_at(std::string_view bytes, std::size_t& pos) noexcept;

/// Encodes one Unicode scalar value as UTF-8.
std::string encode(char32_t cp);

/// Number of Unicode scalars in a valid UTF-8 string.
std::size_t count_scalars(std::string_view bytes) noexcept;

/// Unicode White_Space property (the 25 fixed code points).
bool is_whitespace(char32_t cp) noexcept;

}  // namespace toklens::utf8
