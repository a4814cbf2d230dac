#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "briefaudit/dynamic.hpp"
#include "briefaudit/scoring.hpp"
#include "briefaudit/static_analysis.hpp"

namespace briefaudit {

inline constexpr int kReportSchemaVersion = 1;

/// Settings a report was produced with.
struct ConfigEcho {
  WeightScheme weights = uniform_weights();
  std::vector<SynergyPair> synergies;
  Thresholds thresholds;
  Date knowledge_cutoff;
  int ruleset_version = 0;
  std::string freq_table_id;
  std::string template_version{kTemplateVersion};
  double alpha = kDefaultAlpha;
  double floor_exploit = kDefaultFloorExploit;
  int rank_threshold = kDefaultRankThreshold;
};

struct Report {
  int schema_version = kReportSchemaVersion;
  std::string brief_id;
  std::string brief_title;
  std::size_t word_count = 0;
  std::string generated_at;
  ConfigEcho config;
  StaticProfile static_profile;
  std::optional<ExploitResult> exploit_result;
  CompositeScore composite;
  std::vector<std::string> notes;
  std::vector<std::string> caveats;
};

/// Informational flags derived from the analysis (vacuous temporal analysis,
/// fabricated years, infeasible deliverables, attempt errors).
std::vector<std::string> collect_notes(const AssessmentBrief& brief, const StaticProfile& profile,
                                       const std::optional<ExploitResult>& exploit);
/// Fixed statements about what the measurements are proxies for.
std::vector<std::string> standard_caveats(bool dynamic_ran);

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& doc);

/// Canonical JSON: sorted keys, no insignificant whitespace, at most six
/// decimals, UTF-8, trailing newline.
std::string canonical_json(const nlohmann::json& value);
std::string emit_json(const Report& report);
Report parse_report(std::string_view json_text);

// ---------------------------------------------------------------------------
// Radar chart

struct RadarPoint {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr double kRadarCanvas = 500.0;
inline constexpr double kRadarCenter = 250.0;
inline constexpr double kRadarRadius = 200.0;

/// Position of element `e` (1-based catalog order) at value `value` in [0,1]:
/// element 1 at the top, then clockwise in 45 degree steps.
RadarPoint radar_vertex(Element e, double value);

enum class RadarMode { Vulnerability, Resilience };

/// SVG 1.1 radar chart with one data polygon (id="data"), four grid polygons,
/// eight axes and labels. Coordinates are rounded to two decimals.
std::string emit_radar_svg(const std::array<double, kElementCount>& values,
                           RadarMode mode = RadarMode::Vulnerability, std::string_view title = {});
std::string emit_radar_svg(const StaticProfile& profile, RadarMode mode = RadarMode::Vulnerability);

/// Reads the data polygon's vertices back out of an SVG produced above.
std::vector<RadarPoint> parse_radar_polygon(std::string_view svg);

// ---------------------------------------------------------------------------
// Markdown and portfolio CSV

inline constexpr std::size_t kSnippetChars = 60;

std::string emit_markdown(const Report& report);

struct PortfolioFailure {
  std::string brief_id;
  std::string message;
};

/// Header `brief_id,fused,classification,v_static,v_dynamic`; rows by fused
/// descending then id. When failures are given a `notes` column is appended
/// and each failure becomes a row with classification `error`.
std::string rank_portfolio(std::span<const Report> reports,
                           std::span<const PortfolioFailure> failures = {});

}  // namespace briefaudit
