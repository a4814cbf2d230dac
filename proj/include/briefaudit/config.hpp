#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "briefaudit/backend.hpp"
#include "briefaudit/date.hpp"
#include "briefaudit/dynamic.hpp"
#include "briefaudit/report.hpp"
#include "briefaudit/scoring.hpp"

namespace briefaudit {

enum class BackendKind { Mock, Http };

struct BackendConfig {
  BackendKind kind = BackendKind::Mock;
  MockSettings mock;
  HttpSettings http;
};

struct DynamicSettings {
  bool enabled = false;
  std::optional<BackendConfig> backend;
  std::vector<AttackStrategy> strategies{AttackStrategy::single_shot()};
  int max_rounds = kDefaultMaxRounds;
  std::size_t concurrency_limit = 2;
  double timeout_s = 60.0;
  std::size_t prompt_budget = kDefaultPromptBudget;
  double overlap_threshold = kDefaultOverlapThreshold;
};

enum class OutputFormat { Json, Svg, Md };
OutputFormat parse_output_format(std::string_view name);

struct OutputSettings {
  std::set<OutputFormat> formats{OutputFormat::Json};
  std::filesystem::path out_dir = "briefaudit-out";
};

inline constexpr std::string_view kDefaultKnowledgeCutoff = "2023-12-31";

/// Every tunable of a run. Built-in defaults, then the config file, then
/// command-line flags.
struct Config {
  Date knowledge_cutoff = Date::parse(kDefaultKnowledgeCutoff);
  std::filesystem::path rules_path;
  std::filesystem::path freq_table_path;
  int rank_threshold = kDefaultRankThreshold;
  ScoringConfig scoring;
  DynamicSettings dynamic;
  std::vector<std::string> verb_list = default_verb_list();
  OutputSettings output;
  RadarMode radar_mode = RadarMode::Vulnerability;
  /// Course context for single-brief commands (`knowledge_cutoff` optional).
  std::optional<nlohmann::json> context;
  std::filesystem::path base_dir;

  /// Checks numeric bounds and that the referenced files exist.
  void validate() const;
};

/// Built-in defaults pointing at the bundled data directory.
Config default_config();
/// Relative paths resolve against `base_dir`.
Config parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
Config load_config(const std::filesystem::path& path);

}  // namespace briefaudit
