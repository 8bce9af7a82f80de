#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "toklens/error.hpp"
#include "toklens/tokenizer.hpp"
#include "toklens/utf8.hpp"

namespace toklens {

namespace {

inline bool is_ascii_space(unsigned char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

/// Training texts: monolingual lines, or the target side of a parallel corpus.
std::vector<const std::string*> training_texts(const Corpus& corpus) {
    std::vector<const std::string*> out;
    if (corpus.parallel()) {
        for (const SentencePair& p : corpus.pairs()) out.push_back(&p.tgt_text);
    } else {
        for (const std::string& line : corpus.lines()) out.push_back(&line);
    }
    return out;
}

/// BPE merge loop over interned symbols held in doubly-linked sequences, so
/// one merge costs time proportional to the pair's occurrences. Selection
/// uses a lazy max-heap ordered by (count, lexicographically smallest pair);
/// stale heap entries are dropped when their recorded count no longer
/// matches. Occurrences re-validate against the live sequence before use,
/// and are applied in ascending position order, which reproduces the
/// left-to-right non-overlapping rewrite exactly. Merging stops when the
/// budget is spent or no pair occurs at least twice.
class MergeTrainer {
public:
    using SymbolId = std::uint32_t;
    using PairKey = std::uint64_t;  // (left << 32) | right

    MergeTrainer(std::vector<std::vector<std::string>> seqs, std::vector<std::uint64_t> weights)
        : weights_(std::move(weights)) {
        syms_.reserve(seqs.size());
        for (const auto& seq : seqs) {
            std::vector<SymbolId> ids;
            ids.reserve(seq.size());
            for (const std::string& sym : seq) ids.push_back(intern(sym));
            syms_.push_back(std::move(ids));
        }
        next_.resize(syms_.size());
        prev_.resize(syms_.size());
        alive_.resize(syms_.size());
        for (std::size_t s = 0; s < syms_.size(); ++s) {
            std::size_t n = syms_[s].size();
            next_[s].resize(n);
            prev_[s].resize(n);
            alive_[s].assign(n, 1);
            for (std::size_t i = 0; i < n; ++i) {
                next_[s][i] = i + 1 < n ? static_cast<std::int32_t>(i + 1) : -1;
                prev_[s][i] = static_cast<std::int32_t>(i) - 1;
            }
            for (std::size_t i = 0; i + 1 < n; ++i) {
                PairKey key = make_key(syms_[s][i], syms_[s][i + 1]);
                bump(key, static_cast<std::int64_t>(weights_[s]));
                occurs_[key].push_back({static_cast<std::uint32_t>(s),
                                        static_cast<std::uint32_t>(i)});
            }
        }
    }

    std::vector<MergeRule> run(std::size_t budget) {
        std::vector<MergeRule> merges;
        merges.reserve(budget);
        while (merges.size() < budget) {
            PairKey best = 0;
            if (!pop_best(best)) break;
            merges.push_back({symbols_[left_of(best)], symbols_[right_of(best)]});
            apply_merge(best);
        }
        return merges;
    }

private:
    struct Position {
        std::uint32_t seq;
        std::uint32_t pos;
    };

    static SymbolId left_of(PairKey key) noexcept { return static_cast<SymbolId>(key >> 32); }
    static SymbolId right_of(PairKey key) noexcept {
        return static_cast<SymbolId>(key & 0xFFFFFFFFu);
    }
    static PairKey make_key(SymbolId l, SymbolId r) noexcept {
        return (static_cast<PairKey>(l) << 32) | r;
    }

    SymbolId intern(const std::string& bytes) {
        auto it = ids_.find(bytes);
        if (it != ids_.end()) return it->second;
        SymbolId id = static_cast<SymbolId>(symbols_.size());
        symbols_.push_back(bytes);
        ids_.emplace(bytes, id);
        return id;
    }

    bool pair_precedes(PairKey a, PairKey b) const {
        const std::string& al = symbols_[left_of(a)];
        const std::string& bl = symbols_[left_of(b)];
        if (al != bl) return al < bl;
        return symbols_[right_of(a)] < symbols_[right_of(b)];
    }

    struct HeapEntry {
        std::int64_t count;
        PairKey pair;
    };

    // Max-heap: higher count first, then lexicographically smaller pair.
    bool heap_below(const HeapEntry& a, const HeapEntry& b) const {
        if (a.count != b.count) return a.count < b.count;
        return pair_precedes(b.pair, a.pair);
    }

    void bump(PairKey key, std::int64_t delta) {
        std::int64_t& count = counts_[key];
        count += delta;
        heap_.push_back({count, key});
        std::push_heap(heap_.begin(), heap_.end(),
                       [this](const HeapEntry& a, const HeapEntry& b) { return heap_below(a, b); });
    }

    /// Highest valid entry; every pair's current count was pushed at its
    /// last change, so the first non-stale entry is the true maximum.
    bool pop_best(PairKey& out) {
        auto below = [this](const HeapEntry& a, const HeapEntry& b) { return heap_below(a, b); };
        while (!heap_.empty()) {
            HeapEntry top = heap_.front();
            auto it = counts_.find(top.pair);
            if (it == counts_.end() || it->second != top.count) {
                std::pop_heap(heap_.begin(), heap_.end(), below);
                heap_.pop_back();
                continue;
            }
            if (top.count < 2) return false;  // max frequency below the floor
            out = top.pair;
            return true;
        }
        return false;
    }

    void apply_merge(PairKey key) {
        const SymbolId left = left_of(key);
        const SymbolId right = right_of(key);
        const SymbolId merged = intern(symbols_[left] + symbols_[right]);
        std::vector<Position> positions = std::move(occurs_[key]);
        occurs_.erase(key);
        std::sort(positions.begin(), positions.end(), [](const Position& a, const Position& b) {
            return a.seq != b.seq ? a.seq < b.seq : a.pos < b.pos;
        });
        for (const Position& at : positions) {
            auto& syms = syms_[at.seq];
            auto& next = next_[at.seq];
            auto& prev = prev_[at.seq];
            auto& alive = alive_[at.seq];
            const std::uint32_t i = at.pos;
            if (!alive[i] || syms[i] != left) continue;  // stale occurrence
            const std::int32_t n = next[i];
            if (n < 0 || syms[static_cast<std::uint32_t>(n)] != right) continue;
            const std::int64_t w = static_cast<std::int64_t>(weights_[at.seq]);
            const std::int32_t p = prev[i];
            const std::int32_t nn = next[static_cast<std::uint32_t>(n)];

            // Neighbor adjacencies vanish; the merged pair's own entry is
            // erased wholesale below, so skip self-keyed updates.
            if (p >= 0) {
                PairKey pk = make_key(syms[static_cast<std::uint32_t>(p)], left);
                if (pk != key) bump(pk, -w);
            }
            if (nn >= 0) {
                PairKey nk = make_key(right, syms[static_cast<std::uint32_t>(nn)]);
                if (nk != key) bump(nk, -w);
            }

            syms[i] = merged;
            alive[static_cast<std::uint32_t>(n)] = 0;
            next[i] = nn;
            if (nn >= 0) prev[static_cast<std::uint32_t>(nn)] = static_cast<std::int32_t>(i);

            if (p >= 0) {
                PairKey pk = make_key(syms[static_cast<std::uint32_t>(p)], merged);
                bump(pk, w);
                occurs_[pk].push_back({at.seq, static_cast<std::uint32_t>(p)});
            }
            if (nn >= 0) {
                PairKey nk = make_key(merged, syms[static_cast<std::uint32_t>(nn)]);
                bump(nk, w);
                occurs_[nk].push_back({at.seq, i});
            }
        }
        counts_.erase(key);
    }

    std::vector<std::string> symbols_;
    std::unordered_map<std::string, SymbolId> ids_;
    std::vector<std::vector<SymbolId>> syms_;
    std::vector<std::vector<std::int32_t>> next_;
    std::vector<std::vector<std::int32_t>> prev_;
    std::vector<std::vector<char>> alive_;
    std::vector<std::uint64_t> weights_;
    std::unordered_map<PairKey, std::int64_t> counts_;
    std::unordered_map<PairKey, std::vector<Position>> occurs_;
    std::vector<HeapEntry> heap_;
};

/// Dedupes chunks and returns (sequence, multiplicity) pairs in first-seen
/// order so training is independent of map iteration order.
struct ChunkTable {
    std::vector<std::string> chunks;
    std::vector<std::uint64_t> counts;
    std::unordered_map<std::string, std::size_t> index;

    void add(std::string_view chunk) {
        auto it = index.find(std::string(chunk));
        if (it != index.end()) {
            counts[it->second] += 1;
        } else {
            index.emplace(std::string(chunk), chunks.size());
            chunks.emplace_back(chunk);
            counts.push_back(1);
        }
    }
};

std::vector<std::string> byte_symbols(std::string_view chunk) {
    std::vector<std::string> seq;
    seq.reserve(chunk.size());
    for (char c : chunk) seq.emplace_back(1, c);
    return seq;
}

std::vector<std::string> char_symbols_with_marker(std::string_view word) {
    std::vector<std::string> seq;
    std::size_t i = 0;
    while (i < word.size()) {
        int len = utf8::sequence_length(static_cast<unsigned char>(word[i]));
        std::size_t take =
            (len > 0 && i + static_cast<std::size_t>(len) <= word.size())
                ? static_cast<std::size_t>(len)
                : 1;
        seq.emplace_back(word.substr(i, take));
        i += take;
    }
    seq.emplace_back(1, static_cast<char>(kWordEndMarker));
    return seq;
}

}  // namespace

Tokenizer train_bbpe(const Corpus& corpus, std::size_t target_size) {
    if (target_size < kFirstLearnedId) {
        throw error("bad-size", "target size must be at least " +
                                    std::to_string(kFirstLearnedId));
    }
    std::vector<const std::string*> texts = training_texts(corpus);
    ChunkTable table;
    for (const std::string* text : texts) {
        for (std::string_view unit : split_units(*text)) table.add(unit);
    }
    if (table.chunks.empty()) {
        throw error("empty-corpus", "cannot train on an empty corpus");
    }
    std::vector<std::vector<std::string>> seqs;
    seqs.reserve(table.chunks.size());
    for (const std::string& chunk : table.chunks) seqs.push_back(byte_symbols(chunk));
    MergeTrainer trainer(std::move(seqs), std::move(table.counts));
    return Tokenizer::from_merges(TokenizerMode::ByteBpe,
                                  trainer.run(target_size - kFirstLearnedId));
}

Tokenizer train_bpe(const Corpus& corpus, std::size_t target_size) {
    if (target_size < kFirstLearnedId) {
        throw error("bad-size", "target size must be at least " +
                                    std::to_string(kFirstLearnedId));
    }
    std::vector<const std::string*> texts = training_texts(corpus);
    ChunkTable table;
    for (const std::string* text : texts) {
        std::string_view sv = *text;
        std::size_t i = 0;
        while (i < sv.size()) {
            if (is_ascii_space(static_cast<unsigned char>(sv[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i + 1;
            while (j < sv.size() && !is_ascii_space(static_cast<unsigned char>(sv[j]))) ++j;
            table.add(sv.substr(i, j - i));
            i = j;
        }
    }
    if (table.chunks.empty()) {
        throw error("empty-corpus", "cannot train on a corpus with no words");
    }
    std::vector<std::vector<std::string>> seqs;
    seqs.reserve(table.chunks.size());
    for (const std::string& word : table.chunks) seqs.push_back(char_symbols_with_marker(word));
    MergeTrainer trainer(std::move(seqs), std::move(table.counts));
    return Tokenizer::from_merges(TokenizerMode::WordBpe,
                                  trainer.run(target_size - kFirstLearnedId));
}

}  // namespace toklens
