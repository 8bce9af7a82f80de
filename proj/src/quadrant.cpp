#include "toklens/quadrant.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "toklens/error.hpp"

namespace toklens {

namespace {

constexpr double kPreFloor = 1e-6;  // low-pre denominator guard
constexpr std::string_view kBaselineKey = "__baseline__";

}  // namespace

std::string canonical_direction(std::string_view label) {
    // "en→xx" (U+2192) -> "en-xx"
    static constexpr std::string_view kArrow = "\xE2\x86\x92";
    std::string out;
    out.reserve(label.size());
    std::size_t i = 0;
    while (i < label.size()) {
        if (label.substr(i, kArrow.size()) == kArrow) {
            out.push_back('-');
            i += kArrow.size();
        } else {
            out.push_back(label[i]);
            ++i;
        }
    }
    return out;
}

PerformanceMatrix PerformanceMatrix::from_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw error("io", "cannot open matrix file: " + path.string());
    }
    PerformanceMatrix matrix;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != "model_lang,direction,score") {
                throw error("parse", "line 1: expected header model_lang,direction,score");
            }
            continue;
        }
        if (line.empty()) continue;
        std::size_t c1 = line.find(',');
        std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos ||
            line.find(',', c2 + 1) != std::string::npos) {
            throw error("parse", "line " + std::to_string(line_no) + ": expected 3 fields");
        }
        std::string model = line.substr(0, c1);
        std::string direction = canonical_direction(line.substr(c1 + 1, c2 - c1 - 1));
        double score = 0.0;
        try {
            std::size_t used = 0;
            score = std::stod(line.substr(c2 + 1), &used);
            if (used != line.size() - c2 - 1) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw error("parse", "line " + std::to_string(line_no) + ": malformed score");
        }
        if (!std::isfinite(score) || score < 0.0) {
            throw error("parse",
                        "line " + std::to_string(line_no) + ": scores must be finite and >= 0");
        }
        auto& row = model == kBaselineKey ? matrix.baseline : matrix.models[model];
        if (!row.emplace(direction, score).second) {
            throw error("parse", "line " + std::to_string(line_no) + ": duplicate entry for " +
                                     model + " / " + direction);
        }
    }
    return matrix;
}

double threshold(const std::map<std::string, double>& baseline) {
    if (baseline.empty()) {
        throw error("empty-baseline", "threshold needs at least one baseline direction");
    }
    double sum = 0.0;
    for (const auto& [dir, score] : baseline) sum += score;
    return sum / static_cast<double>(baseline.size());
}

DeltaResult delta(double p_pre, double p_post, const SignificanceParams& params) {
    DeltaResult r;
    if (p_pre >= params.t) {
        r.branch = DeltaBranch::HighPre;
        r.value = p_post / std::max(p_pre, kPreFloor) - params.k;
    } else {
        r.branch = DeltaBranch::LowPre;
        r.value = (p_post - params.k * params.t) / std::max(p_pre, kPreFloor);
    }
    r.gain = r.value > 0.0;
    return r;
}

double multilingual_score(const std::map<std::string, double>& row,
                          const std::pair<std::string, std::string>& directions) {
    for (const std::string& dir : {directions.first, directions.second}) {
        if (row.find(dir) == row.end()) {
            throw error("missing-direction", "row is missing direction '" + dir + "'");
        }
    }
    return (row.at(directions.first) + row.at(directions.second)) / 2.0;
}

std::string_view quadrant_name(Quadrant q) {
    switch (q) {
    case Quadrant::Reciprocal: return "Reciprocal";
    case Quadrant::Altruistic: return "Altruistic";
    case Quadrant::Selfish: return "Selfish";
    case Quadrant::Stagnant: return "Stagnant";
    case Quadrant::MultOnlyGain: return "MultOnlyGain";
    case Quadrant::MultOnlyNoGain: return "MultOnlyNoGain";
    }
    return "Stagnant";
}

std::vector<QuadrantAssignment> classify(const PerformanceMatrix& matrix,
                                         const SignificanceParams& params) {
    const double baseline_mult = multilingual_score(matrix.baseline, matrix.mult_directions);
    std::vector<QuadrantAssignment> out;
    out.reserve(matrix.models.size());
    for (const auto& [lang, row] : matrix.models) {
        QuadrantAssignment a;
        a.language = lang;
        a.multilingual_delta = delta(baseline_mult, multilingual_score(row, matrix.mult_directions), params);

        const std::string own_direction = "en-" + lang;
        auto base_it = matrix.baseline.find(own_direction);
        if (base_it != matrix.baseline.end()) {
            auto model_it = row.find(own_direction);
            if (model_it == row.end()) {
                throw error("missing-direction", "model '" + lang + "' is missing its own direction '" +
                                                     own_direction + "'");
            }
            a.bilingual_delta = delta(base_it->second, model_it->second, params);
            bool bil = a.bilingual_delta->gain;
            bool mult = a.multilingual_delta.gain;
            a.quadrant = bil ? (mult ? Quadrant::Reciprocal : Quadrant::Selfish)
                             : (mult ? Quadrant::Altruistic : Quadrant::Stagnant);
        } else {
            a.quadrant = a.multilingual_delta.gain ? Quadrant::MultOnlyGain
                                                   : Quadrant::MultOnlyNoGain;
        }
        out.push_back(std::move(a));
    }
    // std::map already iterates in code order; keep the contract explicit.
    std::sort(out.begin(), out.end(), [](const QuadrantAssignment& x, const QuadrantAssignment& y) {
        return x.language < y.language;
    });
    return out;
}

std::vector<SweepRow> sweep(const PerformanceMatrix& matrix, const std::vector<double>& k_values) {
    if (k_values.empty()) {
        throw error("bad-argument", "sweep needs at least one significance factor");
    }
    for (double k : k_values) {
        if (!(k > 0.0)) {
            throw error("bad-argument", "significance factors must be positive");
        }
    }
    SignificanceParams params;
    params.t = threshold(matrix.baseline);
    std::vector<SweepRow> rows;
    rows.reserve(k_values.size());
    for (double k : k_values) {
        params.k = k;
        SweepRow row;
        row.k = k;
        for (const QuadrantAssignment& a : classify(matrix, params)) {
            switch (a.quadrant) {
            case Quadrant::Reciprocal: ++row.reciprocal; break;
            case Quadrant::Altruistic: ++row.altruistic; break;
            case Quadrant::Selfish: ++row.selfish; break;
            case Quadrant::Stagnant: ++row.stagnant; break;
            case Quadrant::MultOnlyGain: ++row.mult_only_gain; break;
            case Quadrant::MultOnlyNoGain: ++row.mult_only_no_gain; break;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace toklens
