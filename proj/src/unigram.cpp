#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "toklens/error.hpp"
#include "toklens/tokenizer.hpp"

namespace toklens {

namespace {

constexpr std::size_t kMaxSeedLen = 8;
constexpr int kEmIterations = 4;
constexpr double kPruneShare = 0.2;
constexpr double kUnusedWeight = 0.01;  // keeps unused pieces finite, far below any used one

struct Candidate {
    std::string bytes;
    double count = 0.0;  // frequency, then re-estimated Viterbi usage
    double score = 0.0;
};

struct ViterbiIndex {
    std::unordered_map<std::string, std::pair<double, std::size_t>> scores;  // score, index
    std::size_t max_len = 1;

    void build(const std::vector<Candidate>& pieces) {
        scores.clear();
        max_len = 1;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            scores[pieces[i].bytes] = {pieces[i].score, i};
            max_len = std::max(max_len, pieces[i].bytes.size());
        }
    }
};

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Best-path segmentation; accumulates usage counts weighted by `weight`.
void viterbi_accumulate(const std::string& unit, double weight, const ViterbiIndex& index,
                        std::vector<double>& usage) {
    const std::size_t n = unit.size();
    struct Cell {
        double score = kNegInf;
        std::size_t piece_len = 0;
        std::size_t piece_index = 0;
    };
    std::vector<Cell> dp(n + 1);
    dp[0].score = 0.0;
    std::string probe;
    for (std::size_t end = 1; end <= n; ++end) {
        std::size_t cap = std::min(index.max_len, end);
        for (std::size_t len = cap; len >= 1; --len) {
            if (dp[end - len].score == kNegInf) continue;
            probe.assign(unit.data() + (end - len), len);
            auto it = index.scores.find(probe);
            if (it == index.scores.end()) continue;
            double cand = dp[end - len].score + it->second.first;
            if (cand > dp[end].score) {
                dp[end].score = cand;
                dp[end].piece_len = len;
                dp[end].piece_index = it->second.second;
            }
        }
    }
    for (std::size_t pos = n; pos > 0; pos -= dp[pos].piece_len) {
        usage[dp[pos].piece_index] += weight;
    }
}

void reestimate_scores(std::vector<Candidate>& pieces) {
    double total = 0.0;
    for (const Candidate& p : pieces) total += p.count > 0.0 ? p.count : kUnusedWeight;
    for (Candidate& p : pieces) {
        double w = p.count > 0.0 ? p.count : kUnusedWeight;
        p.score = std::log(w / total);
    }
}

}  // namespace

Tokenizer train_unigram(const Corpus& corpus, std::size_t target_size) {
    if (target_size < 256) {
        throw error("bad-size", "target size must be at least 256");
    }

    // Unit table with multiplicities, same pre-split as byte-level BPE.
    std::vector<std::string> units;
    std::vector<double> unit_weights;
    {
        std::unordered_map<std::string, std::size_t> index;
        auto add_unit = [&](std::string_view unit) {
            auto it = index.find(std::string(unit));
            if (it != index.end()) {
                unit_weights[it->second] += 1.0;
            } else {
                index.emplace(std::string(unit), units.size());
                units.emplace_back(unit);
                unit_weights.push_back(1.0);
            }
        };
        if (corpus.parallel()) {
            for (const SentencePair& p : corpus.pairs())
                for (std::string_view u : split_units(p.tgt_text)) add_unit(u);
        } else {
            for (const std::string& line : corpus.lines())
                for (std::string_view u : split_units(line)) add_unit(u);
        }
    }
    if (units.empty()) {
        throw error("empty-corpus", "cannot train on an empty corpus");
    }

    // Seed inventory: every byte, plus substrings of length 2..8 seen at
    // least twice (with multiplicity).
    std::array<double, 256> byte_freq{};
    std::unordered_map<std::string, double> substr_freq;
    for (std::size_t u = 0; u < units.size(); ++u) {
        const std::string& unit = units[u];
        double w = unit_weights[u];
        for (std::size_t i = 0; i < unit.size(); ++i) {
            byte_freq[static_cast<unsigned char>(unit[i])] += w;
            std::size_t cap = std::min(kMaxSeedLen, unit.size() - i);
            for (std::size_t len = 2; len <= cap; ++len) {
                substr_freq[unit.substr(i, len)] += w;
            }
        }
    }

    std::vector<Candidate> pieces;
    pieces.reserve(256 + substr_freq.size());
    {
        std::vector<std::pair<std::string, double>> multis;
        multis.reserve(substr_freq.size());
        for (auto& [bytes, freq] : substr_freq) {
            if (freq >= 2.0) multis.emplace_back(bytes, freq);
        }
        std::sort(multis.begin(), multis.end());
        for (auto& [bytes, freq] : multis) pieces.push_back({bytes, freq, 0.0});
        for (int b = 0; b < 256; ++b) {
            pieces.push_back({std::string(1, static_cast<char>(b)), byte_freq[static_cast<std::size_t>(b)], 0.0});
        }
    }
    reestimate_scores(pieces);

    // Alternate EM with pruning until the inventory fits. Single-byte
    // pieces are never pruned so coverage stays total.
    ViterbiIndex index;
    while (true) {
        for (int iteration = 0; iteration < kEmIterations; ++iteration) {
            index.build(pieces);
            std::vector<double> usage(pieces.size(), 0.0);
            for (std::size_t u = 0; u < units.size(); ++u) {
                viterbi_accumulate(units[u], unit_weights[u], index, usage);
            }
            for (std::size_t i = 0; i < pieces.size(); ++i) pieces[i].count = usage[i];
            reestimate_scores(pieces);
        }
        if (pieces.size() <= target_size) break;

        std::size_t multi_count = 0;
        for (const Candidate& p : pieces) multi_count += p.bytes.size() > 1 ? 1 : 0;
        std::size_t overshoot = pieces.size() - target_size;
        std::size_t drop = std::min<std::size_t>(
            static_cast<std::size_t>(std::ceil(kPruneShare * static_cast<double>(multi_count))),
            overshoot);
        drop = std::max<std::size_t>(drop, 1);

        // Lowest Viterbi usage goes first; byte order breaks ties.
        std::vector<std::size_t> multis;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (pieces[i].bytes.size() > 1) multis.push_back(i);
        }
        std::sort(multis.begin(), multis.end(), [&](std::size_t a, std::size_t b) {
            if (pieces[a].count != pieces[b].count) return pieces[a].count < pieces[b].count;
            return pieces[a].bytes < pieces[b].bytes;
        });
        multis.resize(std::min(drop, multis.size()));
        std::vector<bool> dead(pieces.size(), false);
        for (std::size_t i : multis) dead[i] = true;
        std::vector<Candidate> kept;
        kept.reserve(pieces.size() - multis.size());
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (!dead[i]) kept.push_back(std::move(pieces[i]));
        }
        pieces = std::move(kept);
    }

    // Canonical order: multi-byte pieces by descending score, then the
    // single bytes in byte order.
    std::vector<UnigramPiece> final_pieces;
    final_pieces.reserve(pieces.size());
    {
        std::vector<const Candidate*> multis;
        std::array<const Candidate*, 256> singles{};
        for (const Candidate& p : pieces) {
            if (p.bytes.size() > 1) {
                multis.push_back(&p);
            } else {
                singles[static_cast<unsigned char>(p.bytes[0])] = &p;
            }
        }
        std::sort(multis.begin(), multis.end(), [](const Candidate* a, const Candidate* b) {
            if (a->score != b->score) return a->score > b->score;
            return a->bytes < b->bytes;
        });
        for (const Candidate* p : multis) final_pieces.push_back({p->bytes, p->score});
        for (int b = 0; b < 256; ++b) {
            final_pieces.push_back({singles[static_cast<std::size_t>(b)]->bytes,
                                    singles[static_cast<std::size_t>(b)]->score});
        }
    }
    return Tokenizer::from_pieces(std::move(final_pieces));
}

}  // namespace toklens
