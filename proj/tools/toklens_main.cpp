// toklens: tokenizer analysis toolkit CLI.
//
// Exit codes: 0 success, 1 usage error, 2 data/IO error. Data errors print
// one line `error: <code>: <message>` on stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "toklens/corpus.hpp"
#include "toklens/encoding.hpp"
#include "toklens/error.hpp"
#include "toklens/lang_registry.hpp"
#include "toklens/metrics.hpp"
#include "toklens/postok.hpp"
#include "toklens/quadrant.hpp"
#include "toklens/report.hpp"
#include "toklens/tokenizer.hpp"
#include "toklens/utf8.hpp"

namespace {

using nlohmann::ordered_json;

constexpr char kPtkMagic[4] = {'P', 'T', 'K', '1'};

struct GlobalOptions {
    std::string out_path;  // empty -> stdout
    std::string format = "json";
    std::uint64_t seed = 0;
};

void write_output(const GlobalOptions& opts, const std::string& payload) {
    if (opts.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) {
        throw toklens::error("io", "cannot write output file: " + opts.out_path);
    }
    out << payload;
}

ordered_json with_provenance(const std::vector<std::filesystem::path>& inputs,
                             ordered_json payload) {
    ordered_json j;
    j["tool_version"] = std::string(toklens::kToolVersion);
    j["inputs_digest"] = toklens::inputs_digest(inputs);
    for (auto& [key, value] : payload.items()) {
        j[key] = std::move(value);
    }
    return j;
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw toklens::error("io", "cannot open file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

unsigned char parse_prefix_byte(const std::string& text) {
    unsigned long value = 0;
    try {
        value = std::stoul(text, nullptr, 0);  // accepts 0xE0 and decimal
    } catch (const std::exception&) {
        throw toklens::error("parse", "cannot parse prefix byte '" + text + "'");
    }
    if (value < 0xE0 || value > 0xEF) {
        throw toklens::error("parse", "prefix byte must be in 0xE0..0xEF");
    }
    return static_cast<unsigned char>(value);
}

toklens::Corpus load_corpus_any(const std::string& path, const std::string& format) {
    if (format == "tsv") return toklens::load_parallel_tsv(path);
    if (format == "jsonl") return toklens::load_parallel_jsonl(path);
    return toklens::load_text(path);
}

std::pair<std::string, std::string> parse_mult_directions(const std::string& flag) {
    std::size_t comma = flag.find(',');
    if (comma == std::string::npos) {
        throw toklens::error("parse", "--mult expects two comma-separated directions");
    }
    return {toklens::canonical_direction(flag.substr(0, comma)),
            toklens::canonical_direction(flag.substr(comma + 1))};
}

int run(int argc, char** argv) {
    CLI::App app{"tokenizer analysis toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions opts;
    app.add_option("--out", opts.out_path, "output path (default: stdout)");
    app.add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", opts.seed, "sampling seed");

    // train-vocab
    auto* train = app.add_subcommand("train-vocab", "train a subword vocabulary");
    std::string train_mode = "bbpe";
    std::size_t train_size = 0;
    std::string train_in;
    std::string train_format = "text";
    std::size_t train_sample = 0;
    train->add_option("--mode", train_mode)->check(CLI::IsMember({"bbpe", "bpe", "unigram"}));
    train->add_option("--size", train_size)->required();
    train->add_option("--in", train_in)->required();
    train->add_option("--in-format", train_format)
        ->check(CLI::IsMember({"text", "tsv", "jsonl"}));
    train->add_option("--sample", train_sample, "sample at most N records before training");

    // extend-vocab
    auto* extend = app.add_subcommand("extend-vocab", "append learned pieces to a base vocabulary");
    std::string extend_base, extend_learned;
    std::size_t extend_size = 0;
    extend->add_option("--base", extend_base)->required();
    extend->add_option("--learned", extend_learned)->required();
    extend->add_option("--size", extend_size)->required();

    // analyze tokenization | overlap
    auto* analyze = app.add_subcommand("analyze", "corpus analytics");
    analyze->require_subcommand(1);
    auto* ratio_cmd = analyze->add_subcommand("tokenization", "over-tokenization ratio");
    std::string ratio_vocab, ratio_corpus, ratio_lang, ratio_registry;
    ratio_cmd->add_option("--vocab", ratio_vocab)->required();
    ratio_cmd->add_option("--corpus", ratio_corpus)->required();
    ratio_cmd->add_option("--lang", ratio_lang)->required();
    ratio_cmd->add_option("--registry", ratio_registry, "registry CSV (default: builtin)");
    auto* overlap_cmd = analyze->add_subcommand("overlap", "token-set overlap");
    std::string overlap_vocab, overlap_a, overlap_b;
    overlap_cmd->add_option("--vocab", overlap_vocab)->required();
    overlap_cmd->add_option("--a", overlap_a)->required();
    overlap_cmd->add_option("--b", overlap_b)->required();

    // census
    auto* census_cmd = app.add_subcommand("census", "three-byte character census");
    std::string census_corpus;
    census_cmd->add_option("--corpus", census_corpus)->required();

    // compress / decompress
    auto* compress_cmd = app.add_subcommand("compress", "strip the dominant prefix byte");
    std::string compress_prefix = "auto";
    std::string compress_in, compress_codec_out;
    compress_cmd->add_option("--prefix", compress_prefix, "auto or a lead byte (0xE0..0xEF)");
    compress_cmd->add_option("--in", compress_in)->required();
    compress_cmd->add_option("--codec-out", compress_codec_out, "also write the codec JSON");

    auto* decompress_cmd = app.add_subcommand("decompress", "reinsert the stripped prefix byte");
    std::string decompress_codec, decompress_in;
    decompress_cmd->add_option("--codec", decompress_codec, "codec JSON (default: .ptk header)");
    decompress_cmd->add_option("--in", decompress_in)->required();

    // classify / sweep / plot-quadrant
    auto* classify_cmd = app.add_subcommand("classify", "quadrant classification");
    std::string classify_matrix, classify_mult = "en-af,en-ro";
    double classify_k = 2.0;
    std::optional<double> classify_t;
    classify_cmd->add_option("--matrix", classify_matrix)->required();
    classify_cmd->add_option("--k", classify_k, "significance factor");
    classify_cmd->add_option("--mult", classify_mult, "multilingual probe directions");
    classify_cmd->add_option("--threshold", classify_t, "override T (default: baseline mean)");

    auto* sweep_cmd = app.add_subcommand("sweep", "quadrant counts across significance factors");
    std::string sweep_matrix, sweep_k = "2,3,5,10,20";
    sweep_cmd->add_option("--matrix", sweep_matrix)->required();
    sweep_cmd->add_option("--k", sweep_k, "comma-separated significance factors");

    auto* plot_cmd = app.add_subcommand("plot-quadrant", "scatter data for the quadrant figure");
    std::string plot_matrix, plot_mult = "en-af,en-ro";
    double plot_k = 2.0;
    plot_cmd->add_option("--matrix", plot_matrix)->required();
    plot_cmd->add_option("--k", plot_k);
    plot_cmd->add_option("--mult", plot_mult);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        std::cerr << "error: usage: " << e.what() << "\n";
        return 1;
    }

    if (train->parsed()) {
        toklens::Corpus corpus = load_corpus_any(train_in, train_format);
        if (train_sample > 0) corpus = toklens::sample(corpus, train_sample, opts.seed);
        toklens::Tokenizer tok = train_mode == "bbpe" ? toklens::train_bbpe(corpus, train_size)
                                 : train_mode == "bpe" ? toklens::train_bpe(corpus, train_size)
                                                       : toklens::train_unigram(corpus, train_size);
        write_output(opts, dump_json(tok.to_json()));
        return 0;
    }
    if (extend->parsed()) {
        toklens::Tokenizer base = toklens::Tokenizer::load(extend_base);
        toklens::Tokenizer learned = toklens::Tokenizer::load(extend_learned);
        toklens::Tokenizer merged = toklens::extend_vocab(base, learned, extend_size);
        write_output(opts, dump_json(merged.to_json()));
        return 0;
    }
    if (ratio_cmd->parsed()) {
        toklens::Tokenizer tok = toklens::Tokenizer::load(ratio_vocab);
        toklens::Corpus corpus = toklens::load_text(ratio_corpus, ratio_lang);
        const toklens::LanguageRegistry registry =
            ratio_registry.empty() ? toklens::LanguageRegistry::builtin()
                                   : toklens::LanguageRegistry::from_csv(ratio_registry);
        toklens::TokenizationReport report =
            toklens::tokenization_ratio(corpus, tok, registry.lookup(ratio_lang));
        std::vector<std::filesystem::path> inputs = {ratio_vocab, ratio_corpus};
        write_output(opts, dump_json(with_provenance(inputs, toklens::report_json(report))));
        return 0;
    }
    if (overlap_cmd->parsed()) {
        toklens::Tokenizer tok = toklens::Tokenizer::load(overlap_vocab);
        toklens::Corpus a = toklens::load_text(overlap_a);
        toklens::Corpus b = toklens::load_text(overlap_b);
        toklens::OverlapReport report = toklens::vocab_overlap(a, b, tok);
        std::vector<std::filesystem::path> inputs = {overlap_vocab, overlap_a, overlap_b};
        write_output(opts, dump_json(with_provenance(inputs, toklens::report_json(report))));
        return 0;
    }
    if (census_cmd->parsed()) {
        toklens::CharCensus c = toklens::census(toklens::load_text(census_corpus));
        std::vector<std::filesystem::path> inputs = {census_corpus};
        write_output(opts, dump_json(with_provenance(inputs, toklens::report_json(c))));
        return 0;
    }
    if (compress_cmd->parsed()) {
        std::string content = read_file_bytes(compress_in);
        toklens::utf8::require_valid(content);
        unsigned char prefix = 0;
        if (compress_prefix == "auto") {
            auto codec = toklens::detect_prefix(toklens::census(toklens::load_text(compress_in)));
            if (!codec) {
                throw toklens::error("no-prefix",
                                     "corpus has no three-byte characters; pass --prefix explicitly");
            }
            prefix = codec->prefix_byte;
        } else {
            prefix = parse_prefix_byte(compress_prefix);
        }
        std::string packed(kPtkMagic, sizeof(kPtkMagic));
        packed.push_back(static_cast<char>(prefix));
        packed.append(3, '\0');
        packed += toklens::compress(content, toklens::PrefixCodec{prefix});
        write_output(opts, packed);
        if (!compress_codec_out.empty()) {
            std::ofstream codec_out(compress_codec_out, std::ios::binary);
            if (!codec_out) {
                throw toklens::error("io", "cannot write codec file: " + compress_codec_out);
            }
            ordered_json j;
            j["prefix_byte"] = static_cast<unsigned>(prefix);
            codec_out << j.dump(2) << '\n';
        }
        return 0;
    }
    if (decompress_cmd->parsed()) {
        std::string packed = read_file_bytes(decompress_in);
        if (packed.size() < 8 || packed.compare(0, 4, kPtkMagic, 4) != 0) {
            throw toklens::error("parse", "not a PTK1 stream: " + decompress_in);
        }
        unsigned char prefix = static_cast<unsigned char>(packed[4]);
        if (prefix < 0xE0 || prefix > 0xEF) {
            throw toklens::error("parse", "PTK1 header carries an invalid prefix byte");
        }
        if (!decompress_codec.empty()) {
            nlohmann::json j = nlohmann::json::parse(read_file_bytes(decompress_codec), nullptr, false);
            if (j.is_discarded() || !j.contains("prefix_byte") ||
                !j["prefix_byte"].is_number_unsigned()) {
                throw toklens::error("schema", "codec JSON must carry \"prefix_byte\"");
            }
            unsigned codec_prefix = j["prefix_byte"].get<unsigned>();
            if (codec_prefix != prefix) {
                throw toklens::error("parse", "codec prefix does not match the stream header");
            }
        }
        write_output(opts, toklens::decompress(std::string_view(packed).substr(8),
                                               toklens::PrefixCodec{prefix}));
        return 0;
    }
    if (classify_cmd->parsed() || plot_cmd->parsed()) {
        bool plotting = plot_cmd->parsed();
        const std::string& matrix_path = plotting ? plot_matrix : classify_matrix;
        toklens::PerformanceMatrix matrix = toklens::PerformanceMatrix::from_csv(matrix_path);
        matrix.mult_directions = parse_mult_directions(plotting ? plot_mult : classify_mult);
        toklens::SignificanceParams params;
        params.k = plotting ? plot_k : classify_k;
        params.t = (!plotting && classify_t) ? *classify_t : toklens::threshold(matrix.baseline);
        std::vector<toklens::QuadrantAssignment> assignments = toklens::classify(matrix, params);
        std::vector<std::filesystem::path> inputs = {matrix_path};
        if (plotting) {
            toklens::PlotSeries series = toklens::emit_quadrant_plot(assignments);
            write_output(opts, opts.format == "csv"
                                   ? toklens::report_csv(series)
                                   : dump_json(with_provenance(inputs, toklens::report_json(series))));
        } else {
            write_output(opts,
                         opts.format == "csv"
                             ? toklens::report_csv(assignments)
                             : dump_json(with_provenance(
                                   inputs, toklens::report_json(assignments, params,
                                                                matrix.mult_directions))));
        }
        return 0;
    }
    if (sweep_cmd->parsed()) {
        toklens::PerformanceMatrix matrix = toklens::PerformanceMatrix::from_csv(sweep_matrix);
        std::vector<double> ks;
        std::stringstream ss(sweep_k);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                ks.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw toklens::error("parse", "cannot parse significance factor '" + item + "'");
            }
        }
        std::vector<toklens::SweepRow> rows = toklens::sweep(matrix, ks);
        std::vector<std::filesystem::path> inputs = {sweep_matrix};
        write_output(opts, opts.format == "csv"
                               ? toklens::report_csv(rows)
                               : dump_json(with_provenance(inputs, toklens::report_json(rows))));
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const toklens::error& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 2;
    }
}
