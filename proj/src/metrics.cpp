#include "toklens/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_set>

#include "toklens/error.hpp"
#include "toklens/utf8.hpp"

namespace toklens {

std::size_t sentence_length(std::string_view text, bool space_separated) {
    std::size_t pos = 0;
    std::size_t count = 0;
    bool in_word = false;
    while (pos < text.size()) {
        char32_t cp = utf8::decode_at(text, pos);
        bool ws = utf8::is_whitespace(cp);
        if (space_separated) {
            if (!ws && !in_word) ++count;
            in_word = !ws;
        } else {
            if (!ws) ++count;
        }
    }
    return count;
}

TokenizationReport tokenization_ratio(const Corpus& corpus, const Tokenizer& tokenizer,
                                      const LanguageInfo& lang) {
    if (corpus.parallel()) {
        throw error("schema", "tokenization ratio expects a monolingual corpus");
    }
    TokenizationReport report;
    report.language = lang.iso_code;
    for (const std::string& line : corpus.lines()) {
        utf8::require_valid(line);
        report.sentence_count += 1;
        report.total_tokens += tokenizer.encode(line).size();
        report.total_length_units += sentence_length(line, lang.space_separated);
    }
    if (report.total_length_units == 0) {
        throw error("empty-corpus", "empty corpus: no length units to divide by");
    }
    report.ratio = static_cast<double>(report.total_tokens) /
                   static_cast<double>(report.total_length_units);
    return report;
}

namespace {

std::unordered_set<TokenId> token_set(const Corpus& corpus, const Tokenizer& tokenizer) {
    std::unordered_set<TokenId> ids;
    auto add_text = [&](const std::string& text) {
        for (TokenId id : tokenizer.encode(text)) ids.insert(id);
    };
    if (corpus.parallel()) {
        for (const SentencePair& p : corpus.pairs()) add_text(p.tgt_text);
    } else {
        for (const std::string& line : corpus.lines()) add_text(line);
    }
    return ids;
}

}  // namespace

OverlapReport vocab_overlap(const Corpus& corpus_a, const Corpus& corpus_b,
                            const Tokenizer& tokenizer) {
    if (corpus_a.size() == 0 || corpus_b.size() == 0) {
        throw error("empty-corpus", "overlap requires two non-empty corpora");
    }
    std::unordered_set<TokenId> a = token_set(corpus_a, tokenizer);
    std::unordered_set<TokenId> b = token_set(corpus_b, tokenizer);
    OverlapReport report;
    report.size_a = a.size();
    report.size_b = b.size();
    for (TokenId id : a) report.intersection_size += b.count(id);
    report.ratio_over_a =
        report.size_a ? static_cast<double>(report.intersection_size) / report.size_a : 0.0;
    report.ratio_over_b =
        report.size_b ? static_cast<double>(report.intersection_size) / report.size_b : 0.0;
    return report;
}

namespace {

/// n-gram multiset as a map from the flattened id window to its count.
std::map<std::vector<TokenId>, std::size_t> ngram_counts(const std::vector<TokenId>& seq,
                                                         std::size_t n) {
    std::map<std::vector<TokenId>, std::size_t> counts;
    if (seq.size() < n) return counts;
    for (std::size_t i = 0; i + n <= seq.size(); ++i) {
        counts[std::vector<TokenId>(seq.begin() + static_cast<std::ptrdiff_t>(i),
                                    seq.begin() + static_cast<std::ptrdiff_t>(i + n))] += 1;
    }
    return counts;
}

}  // namespace

double corpus_bleu(const std::vector<std::vector<TokenId>>& hypotheses,
                   const std::vector<std::vector<TokenId>>& references) {
    if (hypotheses.size() != references.size()) {
        throw error("length-mismatch", "hypothesis count " + std::to_string(hypotheses.size()) +
                                           " does not match reference count " +
                                           std::to_string(references.size()));
    }
    constexpr std::size_t kMaxOrder = 4;
    std::array<std::uint64_t, kMaxOrder> matched{};
    std::array<std::uint64_t, kMaxOrder> total{};
    std::uint64_t hyp_len = 0;
    std::uint64_t ref_len = 0;
    for (std::size_t s = 0; s < hypotheses.size(); ++s) {
        const auto& hyp = hypotheses[s];
        const auto& ref = references[s];
        hyp_len += hyp.size();
        ref_len += ref.size();
        for (std::size_t n = 1; n <= kMaxOrder; ++n) {
            auto hyp_ngrams = ngram_counts(hyp, n);
            auto ref_ngrams = ngram_counts(ref, n);
            for (const auto& [gram, count] : hyp_ngrams) {
                total[n - 1] += count;
                auto it = ref_ngrams.find(gram);
                if (it != ref_ngrams.end()) {
                    matched[n - 1] += std::min(count, it->second);  // clipped
                }
            }
        }
    }
    if (hyp_len == 0) return 0.0;

    double log_precision_sum = 0.0;
    for (std::size_t n = 1; n <= kMaxOrder; ++n) {
        std::uint64_t smoothing = n >= 2 ? 1 : 0;
        std::uint64_t num = matched[n - 1] + smoothing;
        std::uint64_t den = total[n - 1] + smoothing;
        if (num == 0 || den == 0) return 0.0;
        log_precision_sum += std::log(static_cast<double>(num) / static_cast<double>(den));
    }
    double brevity = 1.0;
    if (hyp_len < ref_len) {
        brevity = std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
    }
    return 100.0 * brevity * std::exp(log_precision_sum / static_cast<double>(kMaxOrder));
}

}  // namespace toklens
