#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace toklens {

struct SentencePair {
    std::string src_lang;
    std::string tgt_lang;
    std::string src_text;
    std::string tgt_text;
};

/// Monolingual (lines) or parallel (sentence pairs). Record order is
/// preserved by every operation; texts are kept byte-for-byte as loaded,
/// with no normalization.
struct Corpus {
    std::vector<std::string> languages;  // 1 entry mono, 2 parallel
    std::variant<std::vector<std::string>, std::vector<SentencePair>> records;

    bool parallel() const noexcept {
        return std::holds_alternative<std::vector<SentencePair>>(records);
    }
    std::size_t size() const noexcept {
        return parallel() ? pairs().size() : lines().size();
    }
    const std::vector<std::string>& lines() const {
        return std::get<std::vector<std::string>>(records);
    }
    const std::vector<SentencePair>& pairs() const {
        return std::get<std::vector<SentencePair>>(records);
    }

    static Corpus monolingual(std::string lang, std::vector<std::string> lines);
    static Corpus bilingual(std::string src_lang, std::string tgt_lang,
                            std::vector<SentencePair> pairs);
};

enum class ParallelFormat { Tsv, Jsonl, PairedFiles };

/// One record per line; bytes must be valid UTF-8 (error carries the
/// offending byte offset relative to the file).
Corpus load_text(const std::filesystem::path& path, std::string lang = "");

/// TSV: `src<TAB>tgt`, UTF-8, no header. Exactly one tab per row.
Corpus load_parallel_tsv(const std::filesystem::path& path,
                         std::string src_lang = "", std::string tgt_lang = "");

/// JSONL: one object per line with string fields "src" and "tgt".
Corpus load_parallel_jsonl(const std::filesystem::path& path,
                           std::string src_lang = "", std::string tgt_lang = "");

/// Two plain-text files, line-aligned.
Corpus load_parallel_paired(const std::filesystem::path& src_path,
                            const std::filesystem::path& tgt_path,
                            std::string src_lang = "", std::string tgt_lang = "");

/// TSV serialization; inverse of load_parallel_tsv (always newline-terminated).
std::string to_tsv(const Corpus& corpus);

/// Uniform sample of n records without replacement (whole corpus if it has
/// at most n records). Deterministic for a given seed: indices are chosen
/// by a partial Fisher-Yates shuffle driven by SplitMix64 and the selected
/// records keep their original order.
Corpus sample(const Corpus& corpus, std::size_t n, std::uint64_t seed);

/// Renders the bilingual instruction-tuning prompt for one sentence pair.
std::string format_instruction(const SentencePair& pair, std::string_view src_name,
                               std::string_view tgt_name);

}  // namespace toklens
