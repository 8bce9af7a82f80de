#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "toklens/corpus.hpp"
#include "toklens/lang_registry.hpp"
#include "toklens/tokenizer.hpp"

namespace toklens {

/// Over-tokenization measurement: tokens emitted per length unit, where a
/// length unit is a word for space-separated languages and a character
/// otherwise. The ratio is the micro-average total_tokens / total_length_units.
struct TokenizationReport {
    std::string language;
    std::size_t sentence_count = 0;
    std::size_t total_tokens = 0;
    std::size_t total_length_units = 0;
    double ratio = 0.0;
};

/// Words = maximal runs of non-whitespace; characters = Unicode scalars
/// excluding whitespace. Whitespace is the Unicode White_Space set.
std::size_t sentence_length(std::string_view text, bool space_separated);

TokenizationReport tokenization_ratio(const Corpus& corpus, const Tokenizer& tokenizer,
                                      const LanguageInfo& lang);

/// Overlap of distinct token id sets produced by encoding two corpora.
struct OverlapReport {
    std::size_t size_a = 0;
    std::size_t size_b = 0;
    std::size_t intersection_size = 0;
    double ratio_over_a = 0.0;
    double ratio_over_b = 0.0;
};

OverlapReport vocab_overlap(const Corpus& corpus_a, const Corpus& corpus_b,
                            const Tokenizer& tokenizer);

/// Corpus BLEU-4 in [0, 100] with brevity penalty; n-gram precisions for
/// n >= 2 are smoothed add-one in both numerator and denominator. Not a
/// drop-in for sacre-style spBLEU.
double corpus_bleu(const std::vector<std::vector<TokenId>>& hypotheses,
                   const std::vector<std::vector<TokenId>>& references);

}  // namespace toklens
