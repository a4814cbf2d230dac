#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "briefaudit/elements.hpp"
#include "briefaudit/pattern.hpp"
#include "briefaudit/text.hpp"

namespace briefaudit {

enum class RuleKind { Phrase, Keyword, Pattern };
enum class Polarity { ResiliencePositive, VulnerabilityPositive };

std::string_view to_string(RuleKind kind);
std::string_view to_string(Polarity polarity);

/// Identifies one of the 24 (element, sub-dimension) cells.
struct DimensionRef {
  Element element = Element::Specificity;
  std::size_t index = 0;

  std::string key() const;  // e.g. "3.developmental"
  friend auto operator<=>(const DimensionRef&, const DimensionRef&) = default;
};

struct Rule {
  std::string id;
  DimensionRef dimension;
  RuleKind kind = RuleKind::Keyword;
  std::string pattern;
  double weight = 1.0;
  Polarity polarity = Polarity::ResiliencePositive;
};

/// A rule together with its compiled matcher.
struct CompiledRule {
  Rule rule;
  Pattern matcher;
};

CompiledRule compile_rule(Rule rule);

inline constexpr double kDefaultPositiveSaturation = 3.0;
inline constexpr double kDefaultNegativeSaturation = 2.0;
inline constexpr double kDefaultBeta = 0.5;

/// Immutable after construction; safe to share across threads.
class RuleSet {
 public:
  RuleSet() = default;
  RuleSet(int version, std::vector<Rule> rules, double beta = kDefaultBeta,
          std::map<std::string, double> saturation = {},
          std::map<std::string, double> neg_saturation = {});

  static RuleSet from_json(std::string_view source);
  static RuleSet load(const std::filesystem::path& path);

  int version() const { return version_; }
  double beta() const { return beta_; }
  double positive_saturation(const DimensionRef& d) const;
  double negative_saturation(const DimensionRef& d) const;

  std::span<const CompiledRule> rules() const { return rules_; }
  const Rule* find(std::string_view id) const;
  std::size_t count_for(Element e) const;

 private:
  int version_ = 1;
  double beta_ = kDefaultBeta;
  std::map<std::string, double> saturation_;
  std::map<std::string, double> neg_saturation_;
  std::vector<CompiledRule> rules_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

struct MatchRecord {
  std::string rule_id;
  text::Span span;
  std::string matched_text;

  friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

/// Leftmost non-overlapping case-insensitive matches of every rule, sorted by
/// (span.begin, rule_id).
std::vector<MatchRecord> match_rules(std::string_view body, std::span<const CompiledRule> rules);
std::vector<MatchRecord> match_rules(std::string_view body, const RuleSet& ruleset);

struct DateMention {
  int year = 0;
  text::Span span;

  friend bool operator==(const DateMention&, const DateMention&) = default;
};

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2099;

/// Standalone four-digit years in [1900, 2099], in order of appearance.
/// Both endpoints of "2023-2025" / "2023–2025" are reported.
std::vector<DateMention> extract_years(std::string_view text);

}  // namespace briefaudit
