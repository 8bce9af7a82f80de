#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "toklens/corpus.hpp"

namespace toklens {

/// Census of three-byte (over-tokenized) characters by UTF-8 lead byte.
/// The fraction counts occurrences of three-byte characters under the
/// dominant lead against all character occurrences, whitespace included.
struct CharCensus {
    std::array<std::uint64_t, 16> lead_counts{};  // index i = lead byte 0xE0 + i
    std::uint64_t total_chars = 0;
    std::optional<unsigned char> dominant_prefix;  // absent if no 3-byte chars
    double over_tokenized_char_fraction = 0.0;
};

/// Strip/reinsert rules for one dominant UTF-8 lead byte in 0xE0..0xEF.
struct PrefixCodec {
    unsigned char prefix_byte;
};

CharCensus census(const Corpus& corpus);

/// Codec for the census's dominant lead byte; ties resolve to the smaller
/// byte. Absent when the corpus has no three-byte characters.
std::optional<PrefixCodec> detect_prefix(const CharCensus& c);

/// Every three-byte character whose lead equals the codec prefix is emitted
/// as its two continuation bytes; everything else passes through verbatim.
/// Output is a raw byte stream, not UTF-8.
std::string compress(std::string_view text, PrefixCodec codec);

/// Inverse of compress. At each character start: a continuation byte
/// (0x80..0xBF, impossible in valid UTF-8) marks a stripped character, so
/// the prefix is reinserted and two bytes consumed; valid lead bytes
/// consume their full sequence. Errors carry the byte offset.
std::string decompress(std::string_view bytes, PrefixCodec codec);

}  // namespace toklens
