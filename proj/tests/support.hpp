#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include <unistd.h>

#include "briefaudit/app.hpp"
#include "briefaudit/corpus.hpp"
#include "briefaudit/frequency.hpp"
#include "briefaudit/rules.hpp"

namespace testsupport {

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(FIXTURE_DIR) / name; }

inline const std::shared_ptr<const briefaudit::RuleSet>& default_rules() {
  static const auto rules = std::make_shared<const briefaudit::RuleSet>(
      briefaudit::RuleSet::load(std::filesystem::path(BRIEFAUDIT_DATA_DIR) / "default_rules.json"));
  return rules;
}

inline const std::shared_ptr<const briefaudit::FrequencyTable>& default_table() {
  static const auto table = std::make_shared<const briefaudit::FrequencyTable>(
      briefaudit::FrequencyTable::load(std::filesystem::path(BRIEFAUDIT_DATA_DIR) / "en_freq_50k.tsv"));
  return table;
}

inline briefaudit::CourseContext context(const char* cutoff = "2023-12-31") {
  briefaudit::CourseContext c;
  c.knowledge_cutoff = briefaudit::Date::parse(cutoff);
  return c;
}

inline briefaudit::AssessmentBrief brief(std::string_view body, briefaudit::CourseContext ctx = context()) {
  return briefaudit::load_brief(body, briefaudit::SourceFormat::Plain, std::move(ctx));
}

inline briefaudit::StaticConfig static_config() {
  return {default_rules(), default_table(), briefaudit::kDefaultRankThreshold, briefaudit::kTopicalSaturation};
}

/// Scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("briefaudit-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

 private:
  static int& counter() {
    static int n = 0;
    return n;
  }
};

}  // namespace testsupport
