#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "toklens/corpus.hpp"

namespace toklens {

enum class TokenizerMode { ByteBpe, WordBpe, Unigram };

using TokenId = std::uint32_t;

// Fixed id layout: specials, then the 256 byte tokens, then learned tokens.
// Byte b maps to id b + 3, so lead byte 0xE0 is token id 227.
inline constexpr TokenId kUnkId = 0;
inline constexpr TokenId kBosId = 1;
inline constexpr TokenId kEosId = 2;
inline constexpr TokenId kByteTokenBase = 3;
inline constexpr TokenId kFirstLearnedId = 259;

// Word-mode end-of-word marker. 0xFF never occurs in valid UTF-8, so the
// marker can ride along inside token byte strings and be stripped on decode
// without ever colliding with text bytes.
inline constexpr unsigned char kWordEndMarker = 0xFF;

struct MergeRule {
    std::string left;
    std::string right;

    bool operator==(const MergeRule&) const = default;
};

struct UnigramPiece {
    std::string bytes;
    double score = 0.0;
};

/// Byte-fallback subword tokenizer. Immutable once built; encode/decode are
/// pure. Every byte string is encodable (all 256 single-byte tokens exist),
/// so no input ever produces the unk token.
class Tokenizer {
public:
    /// Zero merges: pure byte fallback.
    static Tokenizer byte_fallback();

    /// BPE-family tokenizer from an ordered merge table. Merge rank r is
    /// token id kFirstLearnedId + r. Operands must be single bytes or
    /// products of earlier merges.
    static Tokenizer from_merges(TokenizerMode mode, std::vector<MergeRule> merges);

    /// Unigram tokenizer. Multi-byte pieces get ids kFirstLearnedId + i in
    /// the order given; single-byte pieces use the fixed byte token ids.
    /// All 256 single-byte pieces must be present.
    static Tokenizer from_pieces(std::vector<UnigramPiece> pieces);

    TokenizerMode mode() const noexcept { return mode_; }

    /// specials + bytes + learned tokens + extension tokens
    std::size_t vocab_size() const noexcept;
    std::size_t learned_count() const noexcept;

    /// Requires valid UTF-8 (error carries the byte offset).
    std::vector<TokenId> encode(std::string_view text) const;

    /// Same tokenization over a raw byte stream (no UTF-8 check); used when
    /// composing with the post-tokenization codec.
    std::vector<TokenId> encode_bytes(std::string_view bytes) const;

    /// Exact inverse of encode; errors on unknown ids and on byte sequences
    /// that do not decode as UTF-8 (possible only for hand-built id lists).
    std::string decode(const std::vector<TokenId>& ids) const;

    /// Byte-level inverse without the UTF-8 validity check.
    std::string decode_bytes(const std::vector<TokenId>& ids) const;

    /// Byte string of one token; specials decode to the empty string.
    std::string token_bytes(TokenId id) const;

    const std::vector<MergeRule>& merges() const noexcept { return merges_; }
    const std::vector<UnigramPiece>& pieces() const noexcept { return pieces_; }
    const std::vector<std::string>& extensions() const noexcept { return extensions_; }

    /// Learned piece byte strings in rank order (merge order for BPE modes,
    /// descending score for unigram), end-of-word markers stripped and
    /// duplicates removed. This is the pool extend_vocab draws from.
    std::vector<std::string> learned_piece_bytes() const;

    nlohmann::ordered_json to_json() const;
    static Tokenizer from_json(const nlohmann::json& j);
    void save(const std::filesystem::path& path) const;
    static Tokenizer load(const std::filesystem::path& path);

private:
    friend Tokenizer extend_vocab(const Tokenizer&, const Tokenizer&, std::size_t);

    Tokenizer() = default;
    void rebuild_index();

    std::vector<TokenId> encode_span(std::string_view bytes,
                                     std::vector<TokenId>& out) const;
    void encode_base(std::string_view bytes, std::vector<TokenId>& out) const;
    void encode_bpe_unit(std::string_view unit, std::vector<TokenId>& out) const;
    void encode_word(std::string_view word, std::vector<TokenId>& out) const;
    void encode_unigram(std::string_view bytes, std::vector<TokenId>& out) const;

    TokenizerMode mode_ = TokenizerMode::ByteBpe;
    std::vector<MergeRule> merges_;        // BPE modes
    std::vector<UnigramPiece> pieces_;     // unigram mode
    std::vector<std::string> extensions_;  // appended vocabulary, any mode

    struct PairHash {
        std::size_t operator()(const std::pair<std::string, std::string>& p) const noexcept {
            std::size_t h = std::hash<std::string>{}(p.first);
            return h ^ (std::hash<std::string>{}(p.second) + 0x9e3779b9 + (h << 6) + (h >> 2));
        }
    };

    std::vector<std::string> learned_bytes_;  // id - kFirstLearnedId -> bytes
    std::unordered_map<std::pair<std::string, std::string>, std::uint32_t, PairHash>
        merge_rank_;
    std::unordered_map<std::string, double> piece_score_;
    std::unordered_map<std::string, TokenId> piece_id_;  // multi-byte pieces
    std::size_t max_piece_len_ = 1;
    std::unordered_map<std::string, TokenId> extension_id_;
    std::size_t max_extension_len_ = 0;
};

/// Byte-level BPE: units are whitespace-split spans where each word keeps
/// one preceding space; lines without spaces stay whole. Merges stop at
/// target_size ids or when no pair occurs at least twice. Equal-frequency
/// pairs resolve to the lexicographically smallest (left, right) bytes.
Tokenizer train_bbpe(const Corpus& corpus, std::size_t target_size);

/// Word-level BPE over character symbols within whitespace-delimited words,
/// each word carrying a trailing end-of-word marker symbol.
Tokenizer train_bpe(const Corpus& corpus, std::size_t target_size);

/// Simplified unigram LM: seeds are all byte substrings of length <= 8 seen
/// at least twice plus all single bytes; 4 Viterbi-EM iterations per round,
/// pruning the 20% least-used multi-byte pieces between rounds until at
/// most target_size pieces remain.
Tokenizer train_unigram(const Corpus& corpus, std::size_t target_size);

/// Appends the top-`size` learned pieces of `learned` to `base` as
/// extension tokens (fresh ids after the base vocabulary). Encoding matches
/// extension tokens greedily longest-first, then falls back to the base
/// tokenizer for the gaps.
Tokenizer extend_vocab(const Tokenizer& base, const Tokenizer& learned, std::size_t size);

/// The byte-BPE pre-split (exposed for tests). Concatenating the returned
/// views restores the input.
std::vector<std::string_view> split_units(std::string_view bytes);

}  // namespace toklens
