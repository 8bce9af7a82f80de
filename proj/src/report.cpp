#include "toklens/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "toklens/encoding.hpp"
#include "toklens/error.hpp"

namespace toklens {

std::string inputs_digest(const std::vector<std::filesystem::path>& paths) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw error("io", "cannot open file: " + path.string());
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        h = fnv1a64(buffer.str(), h);
    }
    return to_hex(h);
}

std::string format_csv_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 6);
    if (ec != std::errc{}) return "0";
    return std::string(buf, ptr);
}

PlotSeries emit_quadrant_plot(const std::vector<QuadrantAssignment>& assignments) {
    PlotSeries series;
    series.name = "quadrant";
    for (const QuadrantAssignment& a : assignments) {
        if (!a.bilingual_delta) continue;
        series.x.push_back(a.bilingual_delta->value);
        series.y.push_back(a.multilingual_delta.value);
        series.labels.push_back(a.language);
    }
    return series;
}

nlohmann::ordered_json report_json(const TokenizationReport& report) {
    return {
        {"language", report.language},
        {"sentence_count", report.sentence_count},
        {"total_tokens", report.total_tokens},
        {"total_length_units", report.total_length_units},
        {"ratio", report.ratio},
    };
}

nlohmann::ordered_json report_json(const OverlapReport& report) {
    return {
        {"size_a", report.size_a},
        {"size_b", report.size_b},
        {"intersection_size", report.intersection_size},
        {"ratio_over_a", report.ratio_over_a},
        {"ratio_over_b", report.ratio_over_b},
    };
}

nlohmann::ordered_json report_json(const CharCensus& c) {
    nlohmann::ordered_json leads;
    for (std::size_t i = 0; i < c.lead_counts.size(); ++i) {
        char key[5];
        std::snprintf(key, sizeof(key), "0x%02zX", 0xE0 + i);
        leads[key] = c.lead_counts[i];
    }
    nlohmann::ordered_json j;
    j["lead_counts"] = std::move(leads);
    j["total_chars"] = c.total_chars;
    if (c.dominant_prefix) {
        j["dominant_prefix"] = static_cast<unsigned>(*c.dominant_prefix);
    } else {
        j["dominant_prefix"] = nullptr;
    }
    j["over_tokenized_char_fraction"] = c.over_tokenized_char_fraction;
    return j;
}

namespace {

nlohmann::ordered_json delta_json(const DeltaResult& d) {
    return {
        {"value", d.value},
        {"gain", d.gain},
        {"branch", d.branch == DeltaBranch::HighPre ? "high_pre" : "low_pre"},
    };
}

}  // namespace

nlohmann::ordered_json report_json(const std::vector<QuadrantAssignment>& assignments,
                                   const SignificanceParams& params,
                                   const std::pair<std::string, std::string>& mult_directions) {
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const QuadrantAssignment& a : assignments) {
        nlohmann::ordered_json item;
        item["language"] = a.language;
        item["quadrant"] = quadrant_name(a.quadrant);
        item["bilingual_delta"] =
            a.bilingual_delta ? delta_json(*a.bilingual_delta) : nlohmann::ordered_json(nullptr);
        item["multilingual_delta"] = delta_json(a.multilingual_delta);
        items.push_back(std::move(item));
    }
    nlohmann::ordered_json j;
    j["threshold"] = params.t;
    j["k"] = params.k;
    j["mult_directions"] = {mult_directions.first, mult_directions.second};
    j["assignments"] = std::move(items);
    return j;
}

nlohmann::ordered_json report_json(const std::vector<SweepRow>& rows) {
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const SweepRow& row : rows) {
        items.push_back({
            {"k", row.k},
            {"reciprocal", row.reciprocal},
            {"altruistic", row.altruistic},
            {"selfish", row.selfish},
            {"stagnant", row.stagnant},
            {"mult_only_gain", row.mult_only_gain},
            {"mult_only_no_gain", row.mult_only_no_gain},
        });
    }
    nlohmann::ordered_json j;
    j["sweep"] = std::move(items);
    return j;
}

nlohmann::ordered_json report_json(const PlotSeries& series) {
    nlohmann::ordered_json j;
    j["name"] = series.name;
    j["x"] = series.x;
    j["y"] = series.y;
    j["labels"] = series.labels;
    return j;
}

std::string report_csv(const std::vector<SweepRow>& rows) {
    std::string out = "k,reciprocal,altruistic,selfish,stagnant,mult_only_gain,mult_only_no_gain\n";
    for (const SweepRow& row : rows) {
        out += format_csv_number(row.k);
        out += ',' + std::to_string(row.reciprocal);
        out += ',' + std::to_string(row.altruistic);
        out += ',' + std::to_string(row.selfish);
        out += ',' + std::to_string(row.stagnant);
        out += ',' + std::to_string(row.mult_only_gain);
        out += ',' + std::to_string(row.mult_only_no_gain);
        out += '\n';
    }
    return out;
}

std::string report_csv(const PlotSeries& series) {
    std::string out = "label,x,y\n";
    for (std::size_t i = 0; i < series.labels.size(); ++i) {
        out += series.labels[i];
        out += ',' + format_csv_number(series.x[i]);
        out += ',' + format_csv_number(series.y[i]);
        out += '\n';
    }
    return out;
}

std::string report_csv(const std::vector<QuadrantAssignment>& assignments) {
    std::string out = "language,quadrant,bilingual_delta,multilingual_delta\n";
    for (const QuadrantAssignment& a : assignments) {
        out += a.language;
        out += ',';
        out += quadrant_name(a.quadrant);
        out += ',';
        out += a.bilingual_delta ? format_csv_number(a.bilingual_delta->value) : "";
        out += ',' + format_csv_number(a.multilingual_delta.value);
        out += '\n';
    }
    return out;
}

}  // namespace toklens
