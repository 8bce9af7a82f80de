#include "toklens/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "toklens/error.hpp"
#include "toklens/rng.hpp"
#include "toklens/utf8.hpp"

namespace toklens {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw error("io", "cannot open file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

/// Splits file content into lines (LF-terminated; a trailing newline does
/// not produce an empty final record). Validates UTF-8 up front so the
/// reported offset is relative to the file start.
std::vector<std::string> split_lines(const std::string& content) {
    utf8::require_valid(content);
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < content.size()) {
        std::size_t end = content.find('\n', start);
        if (end == std::string::npos) {
            lines.push_back(content.substr(start));
            break;
        }
        lines.push_back(content.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

}  // namespace

Corpus Corpus::monolingual(std::string lang, std::vector<std::string> lines) {
    Corpus c;
    if (!lang.empty()) c.languages.push_back(std::move(lang));
    c.records = std::move(lines);
    return c;
}

Corpus Corpus::bilingual(std::string src_lang, std::string tgt_lang,
                         std::vector<SentencePair> pairs) {
    Corpus c;
    c.languages = {std::move(src_lang), std::move(tgt_lang)};
    c.records = std::move(pairs);
    return c;
}

Corpus load_text(const std::filesystem::path& path, std::string lang) {
    return Corpus::monolingual(std::move(lang), split_lines(read_file(path)));
}

Corpus load_parallel_tsv(const std::filesystem::path& path, std::string src_lang,
                         std::string tgt_lang) {
    std::vector<std::string> lines = split_lines(read_file(path));
    std::vector<SentencePair> pairs;
    pairs.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
            throw error("parse",
                        "line " + std::to_string(i + 1) + ": expected exactly one tab");
        }
        pairs.push_back({src_lang, tgt_lang, line.substr(0, tab), line.substr(tab + 1)});
    }
    return Corpus::bilingual(std::move(src_lang), std::move(tgt_lang), std::move(pairs));
}

Corpus load_parallel_jsonl(const std::filesystem::path& path, std::string src_lang,
                           std::string tgt_lang) {
    std::vector<std::string> lines = split_lines(read_file(path));
    std::vector<SentencePair> pairs;
    pairs.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        nlohmann::json obj = nlohmann::json::parse(lines[i], nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            throw error("schema", "line " + std::to_string(i + 1) + ": not a JSON object");
        }
        for (const char* key : {"src", "tgt"}) {
            if (!obj.contains(key) || !obj[key].is_string()) {
                throw error("schema", "line " + std::to_string(i + 1) +
                                          ": missing string field \"" + key + "\"");
            }
        }
        pairs.push_back({src_lang, tgt_lang, obj["src"].get<std::string>(),
                         obj["tgt"].get<std::string>()});
    }
    return Corpus::bilingual(std::move(src_lang), std::move(tgt_lang), std::move(pairs));
}

Corpus load_parallel_paired(const std::filesystem::path& src_path,
                            const std::filesystem::path& tgt_path, std::string src_lang,
                            std::string tgt_lang) {
    std::vector<std::string> src = split_lines(read_file(src_path));
    std::vector<std::string> tgt = split_lines(read_file(tgt_path));
    if (src.size() != tgt.size()) {
        throw error("parse", "paired files differ in length: " + std::to_string(src.size()) +
                                 " vs " + std::to_string(tgt.size()) + " lines");
    }
    std::vector<SentencePair> pairs;
    pairs.reserve(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        pairs.push_back({src_lang, tgt_lang, std::move(src[i]), std::move(tgt[i])});
    }
    return Corpus::bilingual(std::move(src_lang), std::move(tgt_lang), std::move(pairs));
}

std::string to_tsv(const Corpus& corpus) {
    if (!corpus.parallel()) {
        throw error("schema", "TSV serialization requires a parallel corpus");
    }
    std::string out;
    for (const SentencePair& p : corpus.pairs()) {
        out += p.src_text;
        out += '\t';
        out += p.tgt_text;
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::size_t> sample_indices(std::size_t total, std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> indices(total);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.next_below(total - i));
        std::swap(indices[i], indices[j]);
    }
    indices.resize(n);
    std::sort(indices.begin(), indices.end());  // keep original record order
    return indices;
}

}  // namespace

Corpus sample(const Corpus& corpus, std::size_t n, std::uint64_t seed) {
    if (corpus.size() <= n) return corpus;
    std::vector<std::size_t> keep = sample_indices(corpus.size(), n, seed);
    Corpus out;
    out.languages = corpus.languages;
    if (corpus.parallel()) {
        std::vector<SentencePair> pairs;
        pairs.reserve(n);
        for (std::size_t i : keep) pairs.push_back(corpus.pairs()[i]);
        out.records = std::move(pairs);
    } else {
        std::vector<std::string> lines;
        lines.reserve(n);
        for (std::size_t i : keep) lines.push_back(corpus.lines()[i]);
        out.records = std::move(lines);
    }
    return out;
}

std::string format_instruction(const SentencePair& pair, std::string_view src_name,
                               std::string_view tgt_name) {
    if (src_name.empty() || tgt_name.empty()) {
        throw error("bad-argument", "language display names must be non-empty");
    }
    std::string out =
        "Below is an instruction that describes a task, paired with an input that "
        "provides further context. Write a response that appropriately completes "
        "the request.\n";
    out += "Instruction: Translate the following sentences from ";
    out += src_name;
    out += " to ";
    out += tgt_name;
    out += ".\n";
    out += "Input: ";
    out += pair.src_text;
    out += "\n";
    out += "Response: ";
    out += pair.tgt_text;
    return out;
}

}  // namespace toklens
