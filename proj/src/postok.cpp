#include "toklens/postok.hpp"

#include "toklens/error.hpp"
#include "toklens/utf8.hpp"

namespace toklens {

namespace {

void census_text(std::string_view text, CharCensus& out) {
    utf8::require_valid(text);
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char lead = static_cast<unsigned char>(text[i]);
        int len = utf8::sequence_length(lead);
        if (len == 3) {
            out.lead_counts[lead - 0xE0] += 1;
        }
        out.total_chars += 1;
        i += static_cast<std::size_t>(len);
    }
}

}  // namespace

CharCensus census(const Corpus& corpus) {
    CharCensus out;
    if (corpus.parallel()) {
        for (const SentencePair& p : corpus.pairs()) census_text(p.tgt_text, out);
    } else {
        for (const std::string& line : corpus.lines()) census_text(line, out);
    }
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < out.lead_counts.size(); ++i) {
        if (out.lead_counts[i] > best) {  // strict: ties keep the smaller lead
            best = out.lead_counts[i];
            out.dominant_prefix = static_cast<unsigned char>(0xE0 + i);
        }
    }
    if (out.dominant_prefix && out.total_chars > 0) {
        out.over_tokenized_char_fraction =
            static_cast<double>(out.lead_counts[*out.dominant_prefix - 0xE0]) /
            static_cast<double>(out.total_chars);
    }
    return out;
}

std::optional<PrefixCodec> detect_prefix(const CharCensus& c) {
    if (!c.dominant_prefix) return std::nullopt;
    return PrefixCodec{*c.dominant_prefix};
}

std::string compress(std::string_view text, PrefixCodec codec) {
    utf8::require_valid(text);
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char lead = static_cast<unsigned char>(text[i]);
        std::size_t len = static_cast<std::size_t>(utf8::sequence_length(lead));
        if (len == 3 && lead == codec.prefix_byte) {
            out.append(text.substr(i + 1, 2));  // drop the shared lead byte
        } else {
            out.append(text.substr(i, len));
        }
        i += len;
    }
    return out;
}

std::string decompress(std::string_view bytes, PrefixCodec codec) {
    std::string restored;
    restored.reserve(bytes.size() + bytes.size() / 2);
    std::size_t i = 0;
    while (i < bytes.size()) {
        unsigned char b = static_cast<unsigned char>(bytes[i]);
        if ((b & 0xC0) == 0x80) {
            // Continuation byte at a character start: a stripped character.
            if (i + 2 > bytes.size()) {
                throw error("truncated", "incomplete stripped character at byte offset " +
                                             std::to_string(i));
            }
            unsigned char b1 = static_cast<unsigned char>(bytes[i + 1]);
            if ((b1 & 0xC0) != 0x80) {
                throw error("parse", "malformed stripped character at byte offset " +
                                         std::to_string(i));
            }
            restored.push_back(static_cast<char>(codec.prefix_byte));
            restored.append(bytes.substr(i, 2));
            i += 2;
            continue;
        }
        std::size_t len = static_cast<std::size_t>(utf8::sequence_length(b));
        if (len == 0) {
            throw error("parse", "invalid byte at offset " + std::to_string(i));
        }
        if (i + len > bytes.size()) {
            throw error("truncated",
                        "incomplete character at byte offset " + std::to_string(i));
        }
        restored.append(bytes.substr(i, len));
        i += len;
    }
    std::size_t bad = utf8::find_invalid(restored);
    if (bad != utf8::npos) {
        throw error("utf8", "restored stream is not valid UTF-8 at offset " +
                                std::to_string(bad));
    }
    return restored;
}

}  // namespace toklens
