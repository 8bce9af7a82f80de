#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace toklens {

/// Baseline and per-tuned-model translation scores by direction. Direction
/// labels are canonicalized to the "en-xx" form ("en→xx" is accepted on
/// input). Scores are spBLEU-scale: finite and non-negative.
struct PerformanceMatrix {
    std::map<std::string, double> baseline;
    std::map<std::string, std::map<std::string, double>> models;  // tuned lang -> scores
    std::pair<std::string, std::string> mult_directions = {"en-af", "en-ro"};

    /// CSV columns model_lang,direction,score; baseline rows use
    /// model_lang=__baseline__.
    static PerformanceMatrix from_csv(const std::filesystem::path& path);
};

std::string canonical_direction(std::string_view label);

struct SignificanceParams {
    double t = 0.0;  // smoothing threshold
    double k = 2.0;  // significance factor
};

enum class DeltaBranch { HighPre, LowPre };

/// The piecewise significance value:
///   P_pre >= T:  P_post / P_pre - k
///   otherwise:   (P_post - k*T) / max(P_pre, 1e-6)
/// A gain is a strictly positive value.
struct DeltaResult {
    double value = 0.0;
    bool gain = false;
    DeltaBranch branch = DeltaBranch::HighPre;
};

enum class Quadrant {
    Reciprocal,      // bilingual and multilingual gain
    Altruistic,      // multilingual gain only
    Selfish,         // bilingual gain only
    Stagnant,        // neither
    MultOnlyGain,    // no bilingual baseline available
    MultOnlyNoGain,
};

std::string_view quadrant_name(Quadrant q);

struct QuadrantAssignment {
    std::string language;
    std::optional<DeltaResult> bilingual_delta;  // absent without a baseline direction
    DeltaResult multilingual_delta;
    Quadrant quadrant = Quadrant::Stagnant;
};

/// Mean of all baseline direction scores (the smoothing threshold T).
double threshold(const std::map<std::string, double>& baseline);

DeltaResult delta(double p_pre, double p_post, const SignificanceParams& params);

/// Mean of the two multilingual probe directions.
double multilingual_score(const std::map<std::string, double>& row,
                          const std::pair<std::string, std::string>& directions);

/// One assignment per tuned model, sorted by language code.
std::vector<QuadrantAssignment> classify(const PerformanceMatrix& matrix,
                                         const SignificanceParams& params);

struct SweepRow {
    double k = 0.0;
    std::size_t reciprocal = 0;
    std::size_t altruistic = 0;
    std::size_t selfish = 0;
    std::size_t stagnant = 0;
    std::size_t mult_only_gain = 0;
    std::size_t mult_only_no_gain = 0;
};

/// Classification counts at each significance factor; T is recomputed from
/// the matrix baseline once and shared across the sweep.
std::vector<SweepRow> sweep(const PerformanceMatrix& matrix, const std::vector<double>& k_values);

}  // namespace toklens
