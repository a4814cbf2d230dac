#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "briefaudit/corpus.hpp"
#include "briefaudit/date.hpp"
#include "briefaudit/elements.hpp"
#include "briefaudit/frequency.hpp"
#include "briefaudit/rules.hpp"

namespace briefaudit {

/// min(1, x / k).
double saturate(double x, double k);

inline constexpr double kTopicalSaturation = 0.3;

struct RarityEvidence {
  std::size_t rare = 0;
  std::size_t eligible = 0;
  double ratio = 0.0;
  int rank_threshold = kDefaultRankThreshold;
  double saturation = kTopicalSaturation;
};

struct YearEvidence {
  std::vector<int> years;
  int cutoff_year = 0;
};

/// Evidence strength for one sub-dimension. Keyword signals carry their
/// matches and formula parameters; the two computed dimensions carry rarity
/// or year evidence instead.
struct SubDimensionSignal {
  DimensionRef dimension;
  SignalMethod method = SignalMethod::Keyword;
  double signal = 0.0;
  double positive_weight = 0.0;
  double negative_weight = 0.0;
  double k_pos = kDefaultPositiveSaturation;
  double k_neg = kDefaultNegativeSaturation;
  double beta = kDefaultBeta;
  std::vector<MatchRecord> matches;
  std::optional<RarityEvidence> rarity;
  std::optional<YearEvidence> years;
};

struct ElementScore {
  Element element = Element::Specificity;
  std::array<SubDimensionSignal, kDimensionsPerElement> signals;
  double resilience = 0.0;
  double vulnerability = 1.0;
};

/// Builds the score from three signals: r is their mean, v = 1 - r.
ElementScore assemble_element(Element e, std::array<SubDimensionSignal, kDimensionsPerElement> signals);

struct StaticProfile {
  std::string brief_id;
  std::array<ElementScore, kElementCount> elements;
  int ruleset_version = 0;
  std::string freq_table_id;
  Date knowledge_cutoff;

  const ElementScore& at(Element e) const { return elements[index_of(e)]; }
  std::array<double, kElementCount> vulnerabilities() const;
};

/// Phrase rules built from a discipline lexicon; each term counts as
/// resilience evidence for analytical recency. Ids are `lexicon:<term>`.
std::vector<CompiledRule> lexicon_rules(std::span<const std::string> lexicon);

ElementScore analyze_keyword_element(const AssessmentBrief& brief, const RuleSet& ruleset,
                                     Element element);
/// Same, validating a raw element number (UnknownElement outside 3..8).
ElementScore analyze_keyword_element(const AssessmentBrief& brief, const RuleSet& ruleset,
                                     int element_id);

ElementScore analyze_specificity(const AssessmentBrief& brief, const RuleSet& ruleset,
                                 const FrequencyTable* table, int rank_threshold,
                                 double topical_saturation = kTopicalSaturation);

ElementScore analyze_temporal(const AssessmentBrief& brief, const RuleSet& ruleset,
                              const Date& knowledge_cutoff,
                              std::span<const std::string> discipline_lexicon);

struct StaticConfig {
  std::shared_ptr<const RuleSet> ruleset;
  std::shared_ptr<const FrequencyTable> frequency;
  int rank_threshold = kDefaultRankThreshold;
  double topical_saturation = kTopicalSaturation;
};

/// All eight elements; the cutoff comes from the brief's context.
StaticProfile run_static(const AssessmentBrief& brief, const StaticConfig& config);

}  // namespace briefaudit
