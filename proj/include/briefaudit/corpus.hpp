#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "briefaudit/date.hpp"

namespace briefaudit {

enum class SourceFormat { Plain, Markdown };

SourceFormat parse_source_format(std::string_view name);
std::string_view to_string(SourceFormat format);
/// Format implied by a file extension (.md/.markdown, .txt/.text or none).
SourceFormat format_from_path(const std::filesystem::path& path);

struct ResourceDescriptor {
  std::string label;
  std::optional<std::string> body;

  friend bool operator==(const ResourceDescriptor&, const ResourceDescriptor&) = default;
};

struct CourseContext {
  std::optional<std::string> course_code;
  std::optional<Date> delivery_date;
  Date knowledge_cutoff;
  std::vector<ResourceDescriptor> provided_resources;
  std::vector<std::string> discipline_lexicon;

  /// Set when the brief is delivered before the assumed cutoff; the model
  /// would already know everything current at delivery time.
  bool temporal_analysis_vacuous() const {
    return delivery_date.has_value() && *delivery_date < knowledge_cutoff;
  }

  friend bool operator==(const CourseContext&, const CourseContext&) = default;
};

/// Parses a context object. Resource `path` entries are read relative to
/// `base_dir`. `knowledge_cutoff` is required.
CourseContext parse_context(const nlohmann::json& object,
                            const std::filesystem::path& base_dir = {});

/// Field-wise overlay: every key present in `overrides` replaces the whole
/// field of `base`.
CourseContext overlay_context(const CourseContext& base, const nlohmann::json& overrides,
                              const std::filesystem::path& base_dir = {});

struct NormalizedText {
  std::string body;
  /// Byte offsets in `body` where a source line began. They act as sentence
  /// boundaries once line breaks have been collapsed to spaces.
  std::vector<std::size_t> line_starts;
};

/// Markdown syntax stripped to its visible text (code fences kept verbatim),
/// NFC applied, whitespace runs collapsed to single spaces and lines joined.
NormalizedText normalize_text(std::string_view source, SourceFormat format);

struct AssessmentBrief {
  std::string id;
  std::string title;
  std::string body;
  std::vector<std::size_t> line_starts;
  SourceFormat source_format = SourceFormat::Plain;
  std::size_t word_count = 0;
  CourseContext context;

  friend bool operator==(const AssessmentBrief&, const AssessmentBrief&) = default;
};

bool is_valid_brief_id(std::string_view id);

AssessmentBrief load_brief(std::string_view source, SourceFormat format, CourseContext context,
                           std::string id = "brief", std::string title = {});

AssessmentBrief load_brief_file(const std::filesystem::path& path, CourseContext context,
                                std::optional<SourceFormat> format = std::nullopt,
                                std::optional<std::string> id = std::nullopt,
                                std::optional<std::string> title = std::nullopt);

struct ManifestEntry {
  std::string id;
  std::string title;
  std::filesystem::path path;
  std::optional<SourceFormat> format;
  CourseContext context;
};

struct CorpusManifest {
  int version = 1;
  CourseContext shared_context;
  std::vector<ManifestEntry> briefs;
};

/// Parses and validates a manifest; relative paths resolve against `base_dir`.
CorpusManifest load_manifest(std::string_view source, const std::filesystem::path& base_dir);
CorpusManifest load_manifest_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace briefaudit
