#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "briefaudit/backend.hpp"
#include "briefaudit/corpus.hpp"
#include "briefaudit/frequency.hpp"
#include "briefaudit/rules.hpp"
#include "briefaudit/static_analysis.hpp"

namespace briefaudit {

// ---------------------------------------------------------------------------
// Deliverables

const std::vector<std::string>& default_verb_list();

struct Deliverable {
  std::string verb;
  std::string object;
  text::Span span;

  std::string label() const { return verb + " " + object; }
  friend bool operator==(const Deliverable&, const Deliverable&) = default;
};

inline constexpr std::size_t kMaxObjectChars = 120;

/// Every sentence-initial or coordinated ("and", "or", "then", comma)
/// occurrence of a listed verb followed by an object clause, in document
/// order, without removing repeats.
std::vector<Deliverable> find_deliverable_mentions(std::string_view body,
                                                   std::span<const std::size_t> line_starts,
                                                   std::span<const std::string> verbs);

/// Mentions with (verb, object) repeats removed.
std::vector<Deliverable> extract_deliverables(const AssessmentBrief& brief,
                                              std::span<const std::string> verbs);

// ---------------------------------------------------------------------------
// Strategies and prompts

enum class StrategyKind { SingleShot, Iterative, ContextInjection };

std::string_view to_string(StrategyKind kind);
StrategyKind parse_strategy_kind(std::string_view name);

inline constexpr int kDefaultRounds = 3;
inline constexpr int kDefaultMaxRounds = 5;

struct AttackStrategy {
  StrategyKind kind = StrategyKind::SingleShot;
  int rounds = 1;

  static AttackStrategy single_shot() { return {StrategyKind::SingleShot, 1}; }
  static AttackStrategy iterative(int rounds = kDefaultRounds) { return {StrategyKind::Iterative, rounds}; }
  static AttackStrategy context_injection() { return {StrategyKind::ContextInjection, 1}; }

  std::string description() const;
  void validate(int max_rounds = kDefaultMaxRounds) const;
};

inline constexpr std::string_view kTemplateVersion = "v1";
inline constexpr std::size_t kDefaultPromptBudget = 64 * 1024;

std::string_view system_prompt();

/// The normalized body with its source line breaks restored; this is the
/// brief text placed in prompts.
std::string body_with_line_breaks(const AssessmentBrief& brief);

/// Round 1 is the fixed instruction followed by the verbatim brief body.
/// Later rounds of an iterative attempt append a revision clause naming the
/// gaps; context injection appends the provided resources.
std::string build_prompt(const AssessmentBrief& brief, const AttackStrategy& strategy, int round_index,
                         std::span<const std::string> prior_gaps,
                         std::span<const ResourceDescriptor> resources,
                         std::size_t budget = kDefaultPromptBudget);

// ---------------------------------------------------------------------------
// Rubric

inline constexpr double kDefaultOverlapThreshold = 0.5;
inline constexpr double kCoverageWeight = 0.6;
inline constexpr double kComplianceWeight = 0.4;

struct RubricConfig {
  const RuleSet* ruleset = nullptr;
  const FrequencyTable* frequency = nullptr;
  double overlap_threshold = kDefaultOverlapThreshold;
};

struct RubricResult {
  double coverage = 0.0;
  double simulated_compliance = 0.0;
  double exploit = 0.0;
  std::vector<std::string> covered;
  std::vector<std::string> gaps;
  std::vector<std::string> infeasible;
  std::vector<int> demanded_categories;
  std::vector<int> simulated_categories;
  std::vector<int> fabricated_years;
};

/// True when at least half (the threshold) of the object's content tokens
/// appear among `response_tokens`.
bool object_covered(std::string_view object, const std::vector<std::string>& response_tokens,
                    const FrequencyTable& table, double threshold);

RubricResult evaluate_response(const AssessmentBrief& brief, std::span<const Deliverable> deliverables,
                               const StaticProfile& profile, std::string_view response,
                               const Date& knowledge_cutoff, const RubricConfig& config);

// ---------------------------------------------------------------------------
// Attempts

struct TranscriptRound {
  std::string prompt;
  std::string response;
};

struct Attempt {
  AttackStrategy strategy;
  std::string template_version{kTemplateVersion};
  std::vector<TranscriptRound> transcript;
  std::string final_response;
  int best_round = 0;
  RubricResult rubric;
  double exploit = 0.0;
  std::optional<std::string> error;
};

struct ExploitResult {
  std::vector<Attempt> attempts;
  double exploit_max = 0.0;
  double exploit_mean = 0.0;
  nlohmann::json backend;
  std::string template_version{kTemplateVersion};
};

struct DynamicConfig {
  std::vector<AttackStrategy> strategies{AttackStrategy::single_shot()};
  int max_rounds = kDefaultMaxRounds;
  std::size_t concurrency_limit = 2;
  std::size_t prompt_budget = kDefaultPromptBudget;
  std::vector<std::string> verbs;  // empty: default verb list
  RubricConfig rubric;
};

/// Runs every strategy against `backend`. Attempts may run concurrently but
/// results are ordered as the strategies are; a failing attempt scores 0 and
/// records its error without affecting the others.
ExploitResult run_dynamic(const AssessmentBrief& brief, const StaticProfile& profile,
                          const DynamicConfig& config, const GeneratorBackend& backend);

}  // namespace briefaudit
