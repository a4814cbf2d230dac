#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "briefaudit/config.hpp"

namespace briefaudit {

/// Command-line overrides; each one beats the config file.
struct RunFlags {
  bool no_dynamic = false;
  std::optional<TrafficLight> fail_threshold;
  std::optional<std::filesystem::path> out_dir;
  std::vector<OutputFormat> formats;
  std::optional<Date> cutoff;
  std::optional<std::string> timestamp;
  std::optional<StrategyKind> strategy;
  std::optional<int> rounds;
  std::optional<std::uint64_t> seed;
};

using BackendFactory =
    std::function<std::unique_ptr<GeneratorBackend>(const BackendConfig&, const DynamicSettings&)>;

std::unique_ptr<GeneratorBackend> make_backend(const BackendConfig& backend, const DynamicSettings& dynamic);

struct AppIO {
  std::ostream& out;
  std::ostream& err;
  BackendFactory backend_factory = make_backend;
};

/// Rules and frequency table loaded once and shared across briefs.
struct Pipeline {
  Config config;
  std::shared_ptr<const RuleSet> ruleset;
  std::shared_ptr<const FrequencyTable> frequency;

  static Pipeline load(Config config);
  StaticConfig static_config() const;
  DynamicConfig dynamic_config() const;
};

/// Config with the flags folded in (strategy, rounds, seed, output).
Config apply_flags(Config config, const RunFlags& flags);

/// Course context for single-brief commands: the config's `context` object,
/// the config cutoff when it names none, and the `--cutoff` flag on top.
CourseContext single_brief_context(const Config& config, const RunFlags& flags);

Report build_report(const AssessmentBrief& brief, const Pipeline& pipeline, StaticProfile profile,
                    std::optional<ExploitResult> exploit, std::string generated_at);

/// Static analysis, the optional red-team pass and scoring for one brief.
Report analyze_brief(const AssessmentBrief& brief, const Pipeline& pipeline,
                     const GeneratorBackend* backend, std::string generated_at);

/// 0 normally; 1 when the worst classification meets the fail threshold.
int exit_code(std::optional<TrafficLight> worst, std::optional<TrafficLight> fail_threshold);

/// Replaces `path` with `contents` via a temporary file and rename.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

std::string current_timestamp();

int cmd_analyze(const std::filesystem::path& brief_path, const Config& config, const RunFlags& flags, AppIO& io);
int cmd_audit(const std::filesystem::path& manifest_path, const Config& config, const RunFlags& flags, AppIO& io);
int cmd_redteam(const std::filesystem::path& brief_path, const Config& config, const RunFlags& flags, AppIO& io);

}  // namespace briefaudit
