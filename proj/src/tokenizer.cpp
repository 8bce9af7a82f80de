#include "toklens/tokenizer.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "toklens/encoding.hpp"
#include "toklens/error.hpp"
#include "toklens/utf8.hpp"

namespace toklens {

namespace {

inline bool is_ascii_space(unsigned char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

std::vector<std::string_view> split_units(std::string_view bytes) {
    std::vector<std::string_view> units;
    std::size_t i = 0;
    const std::size_t n = bytes.size();
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(bytes[i]);
        std::size_t start = i;
        if (is_ascii_space(c)) {
            if (c == ' ' && i + 1 < n && !is_ascii_space(static_cast<unsigned char>(bytes[i + 1]))) {
                i += 2;
                while (i < n && !is_ascii_space(static_cast<unsigned char>(bytes[i]))) ++i;
            } else {
                ++i;
            }
        } else {
            ++i;
            while (i < n && !is_ascii_space(static_cast<unsigned char>(bytes[i]))) ++i;
        }
        units.push_back(bytes.substr(start, i - start));
    }
    return units;
}

Tokenizer Tokenizer::byte_fallback() {
    return from_merges(TokenizerMode::ByteBpe, {});
}

Tokenizer Tokenizer::from_merges(TokenizerMode mode, std::vector<MergeRule> merges) {
    if (mode == TokenizerMode::Unigram) {
        throw error("bad-argument", "merge table given for unigram mode");
    }
    Tokenizer t;
    t.mode_ = mode;
    t.merges_ = std::move(merges);
    t.rebuild_index();
    return t;
}

Tokenizer Tokenizer::from_pieces(std::vector<UnigramPiece> pieces) {
    Tokenizer t;
    t.mode_ = TokenizerMode::Unigram;
    t.pieces_ = std::move(pieces);
    t.rebuild_index();
    return t;
}

void Tokenizer::rebuild_index() {
    learned_bytes_.clear();
    merge_rank_.clear();
    piece_score_.clear();
    piece_id_.clear();
    max_piece_len_ = 1;
    extension_id_.clear();
    max_extension_len_ = 0;

    if (mode_ == TokenizerMode::Unigram) {
        bool seen_byte[256] = {};
        TokenId next_learned = kFirstLearnedId;
        for (const UnigramPiece& p : pieces_) {
            if (p.bytes.empty()) {
                throw error("parse", "unigram piece with empty byte string");
            }
            if (!std::isfinite(p.score)) {
                throw error("parse", "unigram piece with non-finite score");
            }
            if (!piece_score_.emplace(p.bytes, p.score).second) {
                throw error("parse", "duplicate unigram piece");
            }
            if (p.bytes.size() == 1) {
                seen_byte[static_cast<unsigned char>(p.bytes[0])] = true;
            } else {
                piece_id_.emplace(p.bytes, next_learned++);
                learned_bytes_.push_back(p.bytes);
            }
            max_piece_len_ = std::max(max_piece_len_, p.bytes.size());
        }
        for (int b = 0; b < 256; ++b) {
            if (!seen_byte[b]) {
                throw error("parse", "unigram model is missing single-byte piece " +
                                         std::to_string(b));
            }
        }
    } else {
        // Operands must be base symbols or products of earlier merges. Base
        // symbols are single bytes; word mode starts from character symbols,
        // so a whole UTF-8 character qualifies too.
        std::unordered_map<std::string, bool> products;
        auto single_char = [](const std::string& s) {
            return utf8::is_valid(s) && utf8::count_scalars(s) == 1;
        };
        for (std::size_t rank = 0; rank < merges_.size(); ++rank) {
            const MergeRule& m = merges_[rank];
            auto known = [&](const std::string& s) {
                if (s.size() == 1 || products.count(s) > 0) return true;
                return mode_ == TokenizerMode::WordBpe && single_char(s);
            };
            if (m.left.empty() || m.right.empty() || !known(m.left) || !known(m.right)) {
                throw error("parse", "merge " + std::to_string(rank) +
                                         " uses an operand that is neither a byte nor an "
                                         "earlier merge product");
            }
            std::string bytes = m.left + m.right;
            learned_bytes_.push_back(bytes);
            products.emplace(std::move(bytes), true);
            merge_rank_.emplace(std::make_pair(m.left, m.right),
                                static_cast<std::uint32_t>(rank));
        }
    }

    TokenId next_ext = static_cast<TokenId>(kFirstLearnedId + learned_bytes_.size());
    for (const std::string& ext : extensions_) {
        if (ext.empty()) {
            throw error("parse", "empty extension token");
        }
        extension_id_.emplace(ext, next_ext++);  // first occurrence wins
        max_extension_len_ = std::max(max_extension_len_, ext.size());
    }
}

std::size_t Tokenizer::vocab_size() const noexcept {
    return kFirstLearnedId + learned_bytes_.size() + extensions_.size();
}

std::size_t Tokenizer::learned_count() const noexcept {
    return learned_bytes_.size();
}

std::vector<TokenId> Tokenizer::encode(std::string_view text) const {
    utf8::require_valid(text);
    return encode_bytes(text);
}

std::vector<TokenId> Tokenizer::encode_bytes(std::string_view bytes) const {
    std::vector<TokenId> out;
    out.reserve(bytes.size() / 2 + 1);
    if (extension_id_.empty()) {
        encode_base(bytes, out);
        return out;
    }
    // Extension tokens first: greedy longest match, base tokenization of the
    // uncovered spans.
    std::size_t span_start = 0;
    std::size_t i = 0;
    std::string probe;
    while (i < bytes.size()) {
        TokenId matched = 0;
        std::size_t matched_len = 0;
        std::size_t cap = std::min(max_extension_len_, bytes.size() - i);
        for (std::size_t len = cap; len >= 1; --len) {
            probe.assign(bytes.data() + i, len);
            auto it = extension_id_.find(probe);
            if (it != extension_id_.end()) {
                matched = it->second;
                matched_len = len;
                break;
            }
        }
        if (matched_len > 0) {
            if (span_start < i) encode_base(bytes.substr(span_start, i - span_start), out);
            out.push_back(matched);
            i += matched_len;
            span_start = i;
        } else {
            ++i;
        }
    }
    if (span_start < bytes.size()) encode_base(bytes.substr(span_start), out);
    return out;
}

void Tokenizer::encode_base(std::string_view bytes, std::vector<TokenId>& out) const {
    switch (mode_) {
    case TokenizerMode::ByteBpe:
        for (std::string_view unit : split_units(bytes)) encode_bpe_unit(unit, out);
        break;
    case TokenizerMode::WordBpe: {
        std::size_t i = 0;
        while (i < bytes.size()) {
            unsigned char c = static_cast<unsigned char>(bytes[i]);
            if (is_ascii_space(c)) {
                out.push_back(kByteTokenBase + c);
                ++i;
            } else {
                std::size_t j = i + 1;
                while (j < bytes.size() && !is_ascii_space(static_cast<unsigned char>(bytes[j])))
                    ++j;
                encode_word(bytes.substr(i, j - i), out);
                i = j;
            }
        }
        break;
    }
    case TokenizerMode::Unigram:
        encode_unigram(bytes, out);
        break;
    }
}

namespace {

struct Symbol {
    std::string bytes;
    TokenId id;  // byte or learned token; resolved lazily for fallbacks
};

}  // namespace

void Tokenizer::encode_bpe_unit(std::string_view unit, std::vector<TokenId>& out) const {
    std::vector<Symbol> syms;
    syms.reserve(unit.size());
    for (unsigned char c : unit) {
        syms.push_back({std::string(1, static_cast<char>(c)), kByteTokenBase + c});
    }
    // Apply merges in rank order: the lowest-ranked pair present is merged
    // across the whole unit, then the scan restarts.
    while (syms.size() >= 2) {
        std::uint32_t best_rank = std::numeric_limits<std::uint32_t>::max();
        for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
            auto it = merge_rank_.find({syms[i].bytes, syms[i + 1].bytes});
            if (it != merge_rank_.end() && it->second < best_rank) best_rank = it->second;
        }
        if (best_rank == std::numeric_limits<std::uint32_t>::max()) break;
        const MergeRule& rule = merges_[best_rank];
        std::vector<Symbol> next;
        next.reserve(syms.size());
        for (std::size_t i = 0; i < syms.size(); ++i) {
            if (i + 1 < syms.size() && syms[i].bytes == rule.left &&
                syms[i + 1].bytes == rule.right) {
                next.push_back({syms[i].bytes + syms[i + 1].bytes,
                                static_cast<TokenId>(kFirstLearnedId + best_rank)});
                ++i;
            } else {
                next.push_back(std::move(syms[i]));
            }
        }
        syms = std::move(next);
    }
    for (const Symbol& s : syms) out.push_back(s.id);
}

void Tokenizer::encode_word(std::string_view word, std::vector<TokenId>& out) const {
    // Character symbols plus the end-of-word marker; anything left unmerged
    // falls back to byte tokens.
    std::vector<Symbol> syms;
    std::size_t i = 0;
    while (i < word.size()) {
        int len = utf8::sequence_length(static_cast<unsigned char>(word[i]));
        std::size_t take = 1;
        if (len > 1 && i + static_cast<std::size_t>(len) <= word.size()) {
            bool ok = true;
            for (int k = 1; k < len; ++k) {
                if ((static_cast<unsigned char>(word[i + static_cast<std::size_t>(k)]) & 0xC0) !=
                    0x80) {
                    ok = false;
                    break;
                }
            }
            if (ok) take = static_cast<std::size_t>(len);
        }
        syms.push_back({std::string(word.substr(i, take)), kUnkId});
        i += take;
    }
    syms.push_back({std::string(1, static_cast<char>(kWordEndMarker)), kUnkId});

    while (syms.size() >= 2) {
        std::uint32_t best_rank = std::numeric_limits<std::uint32_t>::max();
        for (std::size_t k = 0; k + 1 < syms.size(); ++k) {
            auto it = merge_rank_.find({syms[k].bytes, syms[k + 1].bytes});
            if (it != merge_rank_.end() && it->second < best_rank) best_rank = it->second;
        }
        if (best_rank == std::numeric_limits<std::uint32_t>::max()) break;
        const MergeRule& rule = merges_[best_rank];
        std::vector<Symbol> next;
        next.reserve(syms.size());
        for (std::size_t k = 0; k < syms.size(); ++k) {
            if (k + 1 < syms.size() && syms[k].bytes == rule.left &&
                syms[k + 1].bytes == rule.right) {
                next.push_back({syms[k].bytes + syms[k + 1].bytes,
                                static_cast<TokenId>(kFirstLearnedId + best_rank)});
                ++k;
            } else {
                next.push_back(std::move(syms[k]));
            }
        }
        syms = std::move(next);
    }
    for (const Symbol& s : syms) {
        if (s.id != kUnkId) {
            out.push_back(s.id);
        } else if (s.bytes.size() == 1) {
            out.push_back(kByteTokenBase + static_cast<unsigned char>(s.bytes[0]));
        } else {
            for (unsigned char c : s.bytes) out.push_back(kByteTokenBase + c);
        }
    }
}

void Tokenizer::encode_unigram(std::string_view bytes, std::vector<TokenId>& out) const {
    const std::size_t n = bytes.size();
    if (n == 0) return;
    struct Cell {
        double score = kNegInf;
        std::size_t piece_len = 0;
    };
    std::vector<Cell> dp(n + 1);
    dp[0].score = 0.0;
    std::string probe;
    for (std::size_t end = 1; end <= n; ++end) {
        std::size_t cap = std::min(max_piece_len_, end);
        // Longer pieces probed first so score ties resolve to the longest.
        for (std::size_t len = cap; len >= 1; --len) {
            if (dp[end - len].score == kNegInf) continue;
            probe.assign(bytes.data() + (end - len), len);
            auto it = piece_score_.find(probe);
            if (it == piece_score_.end()) continue;
            double cand = dp[end - len].score + it->second;
            if (cand > dp[end].score) {
                dp[end].score = cand;
                dp[end].piece_len = len;
            }
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> spans;  // (start, len), reversed
    for (std::size_t pos = n; pos > 0; pos -= spans.back().second) {
        spans.emplace_back(pos - dp[pos].piece_len, dp[pos].piece_len);
    }
    std::string piece;
    for (auto it = spans.rbegin(); it != spans.rend(); ++it) {
        piece.assign(bytes.data() + it->first, it->second);
        if (piece.size() == 1) {
            out.push_back(kByteTokenBase + static_cast<unsigned char>(piece[0]));
        } else {
            out.push_back(piece_id_.at(piece));
        }
    }
}

std::string Tokenizer::token_bytes(TokenId id) const {
    if (id < kByteTokenBase) return {};
    if (id < kFirstLearnedId) return std::string(1, static_cast<char>(id - kByteTokenBase));
    std::size_t learned = id - kFirstLearnedId;
    if (learned < learned_bytes_.size()) return learned_bytes_[learned];
    std::size_t ext = learned - learned_bytes_.size();
    if (ext < extensions_.size()) return extensions_[ext];
    throw error("unknown-id", "token id " + std::to_string(id) + " is outside the vocabulary");
}

std::string Tokenizer::decode_bytes(const std::vector<TokenId>& ids) const {
    std::string bytes;
    for (TokenId id : ids) bytes += token_bytes(id);
    return bytes;
}

std::string Tokenizer::decode(const std::vector<TokenId>& ids) const {
    std::string bytes = decode_bytes(ids);
    if (mode_ == TokenizerMode::WordBpe) {
        std::erase(bytes, static_cast<char>(kWordEndMarker));
    }
    std::size_t bad = utf8::find_invalid(bytes);
    if (bad != utf8::npos) {
        throw error("utf8",
                    "decoded bytes are not valid UTF-8 at offset " + std::to_string(bad));
    }
    return bytes;
}

std::vector<std::string> Tokenizer::learned_piece_bytes() const {
    std::vector<std::string> out;
    std::unordered_map<std::string, bool> seen;
    for (const std::string& raw : learned_bytes_) {
        std::string piece = raw;
        if (mode_ == TokenizerMode::WordBpe && !piece.empty() &&
            static_cast<unsigned char>(piece.back()) == kWordEndMarker) {
            piece.pop_back();
        }
        if (piece.empty()) continue;
        if (seen.emplace(piece, true).second) out.push_back(std::move(piece));
    }
    return out;
}

Tokenizer extend_vocab(const Tokenizer& base, const Tokenizer& learned, std::size_t size) {
    if (size == 0) {
        throw error("bad-size", "extension size must be positive");
    }
    std::vector<std::string> pool = learned.learned_piece_bytes();
    if (size > pool.size()) {
        throw error("bad-size", "requested " + std::to_string(size) + " extension tokens but only " +
                                    std::to_string(pool.size()) + " learned pieces are available");
    }
    Tokenizer out = base;
    out.extensions_.insert(out.extensions_.end(), pool.begin(),
                           pool.begin() + static_cast<std::ptrdiff_t>(size));
    out.rebuild_index();
    return out;
}

namespace {

const char* mode_name(TokenizerMode mode) {
    switch (mode) {
    case TokenizerMode::ByteBpe: return "bbpe";
    case TokenizerMode::WordBpe: return "bpe";
    case TokenizerMode::Unigram: return "unigram";
    }
    return "bbpe";
}

TokenizerMode mode_from_name(const std::string& name) {
    if (name == "bbpe") return TokenizerMode::ByteBpe;
    if (name == "bpe") return TokenizerMode::WordBpe;
    if (name == "unigram") return TokenizerMode::Unigram;
    throw error("schema", "unknown tokenizer mode '" + name + "'");
}

}  // namespace

nlohmann::ordered_json Tokenizer::to_json() const {
    nlohmann::ordered_json j;
    j["mode"] = mode_name(mode_);
    nlohmann::ordered_json merges = nlohmann::ordered_json::array();
    for (const MergeRule& m : merges_) {
        merges.push_back({base64_encode(m.left), base64_encode(m.right)});
    }
    j["merges"] = std::move(merges);
    nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
    for (const UnigramPiece& p : pieces_) {
        pieces.push_back({{"bytes", base64_encode(p.bytes)}, {"score", p.score}});
    }
    j["pieces"] = std::move(pieces);
    nlohmann::ordered_json exts = nlohmann::ordered_json::array();
    for (const std::string& e : extensions_) exts.push_back(base64_encode(e));
    j["extensions"] = std::move(exts);
    return j;
}

Tokenizer Tokenizer::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("mode") || !j["mode"].is_string()) {
        throw error("schema", "vocabulary JSON must be an object with a \"mode\" field");
    }
    Tokenizer t;
    t.mode_ = mode_from_name(j["mode"].get<std::string>());
    if (t.mode_ != TokenizerMode::Unigram && j.contains("merges")) {
        for (const auto& entry : j["merges"]) {
            if (!entry.is_array() || entry.size() != 2) {
                throw error("schema", "merge entries must be [left, right] pairs");
            }
            t.merges_.push_back({base64_decode(entry[0].get<std::string>()),
                                 base64_decode(entry[1].get<std::string>())});
        }
    }
    if (t.mode_ == TokenizerMode::Unigram && j.contains("pieces")) {
        for (const auto& entry : j["pieces"]) {
            if (!entry.is_object() || !entry.contains("bytes") || !entry.contains("score")) {
                throw error("schema", "piece entries must carry \"bytes\" and \"score\"");
            }
            t.pieces_.push_back({base64_decode(entry["bytes"].get<std::string>()),
                                 entry["score"].get<double>()});
        }
    }
    if (j.contains("extensions")) {
        for (const auto& entry : j["extensions"]) {
            t.extensions_.push_back(base64_decode(entry.get<std::string>()));
        }
    }
    if (t.mode_ == TokenizerMode::Unigram && t.pieces_.empty()) {
        throw error("schema", "unigram vocabulary without pieces");
    }
    t.rebuild_index();
    return t;
}

void Tokenizer::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw error("io", "cannot write vocabulary file: " + path.string());
    }
    out << to_json().dump(2) << '\n';
}

Tokenizer Tokenizer::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw error("io", "cannot open vocabulary file: " + path.string());
    }
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw error("parse", "vocabulary file is not valid JSON: " + path.string());
    }
    return from_json(j);
}

}  // namespace toklens
