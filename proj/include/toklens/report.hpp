#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "toklens/metrics.hpp"
#include "toklens/postok.hpp"
#include "toklens/quadrant.hpp"

namespace toklens {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// FNV-1a 64 digest over the given files' bytes, in argument order.
/// Identifies which inputs produced a report; not a security hash.
std::string inputs_digest(const std::vector<std::filesystem::path>& paths);

/// Locale-independent "%.6g"-style rendering for CSV cells.
std::string format_csv_number(double value);

/// Scatter data for the quadrant figure: one labeled point per fully
/// classified language (x bilingual delta, y multilingual delta).
/// Partially classified languages are omitted.
struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<std::string> labels;
};

PlotSeries emit_quadrant_plot(const std::vector<QuadrantAssignment>& assignments);

nlohmann::ordered_json report_json(const TokenizationReport& report);
nlohmann::ordered_json report_json(const OverlapReport& report);
nlohmann::ordered_json report_json(const CharCensus& c);
nlohmann::ordered_json report_json(const std::vector<QuadrantAssignment>& assignments,
                                   const SignificanceParams& params,
                                   const std::pair<std::string, std::string>& mult_directions);
nlohmann::ordered_json report_json(const std::vector<SweepRow>& rows);
nlohmann::ordered_json report_json(const PlotSeries& series);

std::string report_csv(const std::vector<SweepRow>& rows);
std::string report_csv(const PlotSeries& series);
std::string report_csv(const std::vector<QuadrantAssignment>& assignments);

}  // namespace toklens
