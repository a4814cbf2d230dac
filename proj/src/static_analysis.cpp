#include "briefaudit/static_analysis.hpp"

#include <algorithm>
#include <unordered_map>

#include "briefaudit/error.hpp"
#include "briefaudit/text.hpp"

namespace briefaudit {

double saturate(double x, double k) {
  if (!(k > 0.0)) throw Error(ErrorCode::InvalidArgument, "saturation constant must be > 0");
  return std::min(1.0, x / k);
}

std::array<double, kElementCount> StaticProfile::vulnerabilities() const {
  std::array<double, kElementCount> v{};
  for (std::size_t i = 0; i < kElementCount; ++i) v[i] = elements[i].vulnerability;
  return v;
}

ElementScore assemble_element(Element e, std::array<SubDimensionSignal, kDimensionsPerElement> signals) {
  ElementScore score;
  score.element = e;
  score.signals = std::move(signals);
  double sum = 0.0;
  for (const auto& s : score.signals) sum += s.signal;
  score.resilience = sum / static_cast<double>(kDimensionsPerElement);
  score.vulnerability = 1.0 - score.resilience;
  return score;
}

std::vector<CompiledRule> lexicon_rules(std::span<const std::string> lexicon) {
  std::vector<CompiledRule> rules;
  for (const auto& raw : lexicon) {
    const auto term = text::trim(raw);
    if (term.empty()) continue;
    const std::string id = "lexicon:" + text::ascii_lower(term);
    if (std::any_of(rules.begin(), rules.end(), [&](const auto& r) { return r.rule.id == id; })) {
      continue;
    }
    Rule rule;
    rule.id = id;
    rule.dimension = {Element::Temporal, 2};
    rule.kind = RuleKind::Phrase;
    rule.pattern = term;
    rules.push_back(compile_rule(std::move(rule)));
  }
  return rules;
}

namespace {

/// Matches of a ruleset plus lexicon rules with an id -> rule lookup.
class Evidence {
 public:
  Evidence(const AssessmentBrief& brief, const RuleSet& ruleset,
           std::span<const std::string> lexicon)
      : lexicon_(lexicon_rules(lexicon)) {
    records_ = match_rules(brief.body, ruleset);
    if (!lexicon_.empty()) {
      auto extra = match_rules(brief.body, lexicon_);
      records_.insert(records_.end(), extra.begin(), extra.end());
      std::sort(records_.begin(), records_.end(), [](const MatchRecord& a, const MatchRecord& b) {
        if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
        return a.rule_id < b.rule_id;
      });
    }
    for (const auto& r : ruleset.rules()) lookup_.emplace(r.rule.id, &r.rule);
    for (const auto& r : lexicon_) lookup_.emplace(r.rule.id, &r.rule);
  }

  const std::vector<MatchRecord>& records() const { return records_; }
  const Rule* rule(const std::string& id) const {
    auto it = lookup_.find(id);
    return it == lookup_.end() ? nullptr : it->second;
  }

 private:
  std::vector<CompiledRule> lexicon_;
  std::vector<MatchRecord> records_;
  std::unordered_map<std::string, const Rule*> lookup_;
};

SubDimensionSignal keyword_signal(const DimensionRef& dim, const Evidence& evidence,
                                  const RuleSet& ruleset) {
  SubDimensionSignal s;
  s.dimension = dim;
  s.method = SignalMethod::Keyword;
  s.k_pos = ruleset.positive_saturation(dim);
  s.k_neg = ruleset.negative_saturation(dim);
  s.beta = ruleset.beta();
  for (const auto& m : evidence.records()) {
    const Rule* rule = evidence.rule(m.rule_id);
    if (rule == nullptr || !(rule->dimension == dim)) continue;
    if (rule->polarity == Polarity::ResiliencePositive) {
      s.positive_weight += rule->weight;
    } else {
      s.negative_weight += rule->weight;
    }
    s.matches.push_back(m);
  }
  const double raw = saturate(s.positive_weight, s.k_pos) - s.beta * saturate(s.negative_weight, s.k_neg);
  s.signal = std::clamp(raw, 0.0, 1.0);
  return s;
}

SubDimensionSignal topical_signal(const AssessmentBrief& brief, const Evidence& evidence,
                                  const FrequencyTable& table, int rank_threshold,
                                  double topical_saturation) {
  // Tokens covered by any rule match are assessment-design vocabulary
  // (cue phrases, named frameworks), not subject matter.
  std::vector<std::string> tokens;
  const auto& records = evidence.records();
  for (auto& token : text::tokenize_spans(brief.body)) {
    const bool covered = std::any_of(records.begin(), records.end(),
                                     [&](const MatchRecord& m) { return m.span.overlaps(token.span); });
    if (!covered) tokens.push_back(std::move(token.text));
  }
  const auto count = rarity_count(tokens, table, rank_threshold);

  SubDimensionSignal s;
  s.dimension = {Element::Specificity, 0};
  s.method = SignalMethod::Rarity;
  s.rarity = RarityEvidence{count.rare, count.eligible, count.ratio(), rank_threshold,
                            topical_saturation};
  s.signal = saturate(count.ratio(), topical_saturation);
  return s;
}

SubDimensionSignal reference_recency(const AssessmentBrief& brief, const Date& cutoff) {
  SubDimensionSignal s;
  s.dimension = {Element::Temporal, 0};
  s.method = SignalMethod::Years;
  YearEvidence years;
  years.cutoff_year = cutoff.year();
  std::size_t recent = 0;
  for (const auto& mention : extract_years(brief.body)) {
    years.years.push_back(mention.year);
    if (mention.year >= years.cutoff_year) ++recent;
  }
  s.signal = years.years.empty()
                 ? 0.0
                 : static_cast<double>(recent) / static_cast<double>(years.years.size());
  s.years = std::move(years);
  return s;
}

ElementScore keyword_element(Element element, const Evidence& evidence, const RuleSet& ruleset) {
  std::array<SubDimensionSignal, kDimensionsPerElement> signals;
  for (std::size_t i = 0; i < kDimensionsPerElement; ++i) {
    signals[i] = keyword_signal({element, i}, evidence, ruleset);
  }
  return assemble_element(element, std::move(signals));
}

ElementScore specificity_element(const AssessmentBrief& brief, const Evidence& evidence,
                                 const RuleSet& ruleset, const FrequencyTable* table,
                                 int rank_threshold, double topical_saturation) {
  if (table == nullptr) {
    throw Error(ErrorCode::MissingFrequencyTable, "specificity analysis needs a frequency table");
  }
  return assemble_element(
      Element::Specificity,
      {topical_signal(brief, evidence, *table, rank_threshold, topical_saturation),
       keyword_signal({Element::Specificity, 1}, evidence, ruleset),
       keyword_signal({Element::Specificity, 2}, evidence, ruleset)});
}

ElementScore temporal_element(const AssessmentBrief& brief, const Evidence& evidence,
                              const RuleSet& ruleset, const Date& cutoff) {
  return assemble_element(Element::Temporal,
                          {reference_recency(brief, cutoff),
                           keyword_signal({Element::Temporal, 1}, evidence, ruleset),
                           keyword_signal({Element::Temporal, 2}, evidence, ruleset)});
}

}  // namespace

ElementScore analyze_keyword_element(const AssessmentBrief& brief, const RuleSet& ruleset,
                                     Element element) {
  if (element_info(element).analyzer != AnalyzerKind::Keyword) {
    throw Error(ErrorCode::UnknownElement,
                "element " + std::to_string(to_int(element)) + " has a specialized analyzer");
  }
  if (ruleset.count_for(element) == 0) {
    throw Error(ErrorCode::NoRulesForElement,
                "rule set has no rules for element " + std::to_string(to_int(element)));
  }
  Evidence evidence(brief, ruleset, {});
  return keyword_element(element, evidence, ruleset);
}

ElementScore analyze_keyword_element(const AssessmentBrief& brief, const RuleSet& ruleset,
                                     int element_id) {
  auto element = element_from_int(element_id);
  if (!element) throw Error(ErrorCode::UnknownElement, "element " + std::to_string(element_id));
  return analyze_keyword_element(brief, ruleset, *element);
}

ElementScore analyze_specificity(const AssessmentBrief& brief, const RuleSet& ruleset,
                                 const FrequencyTable* table, int rank_threshold,
                                 double topical_saturation) {
  if (table == nullptr) {
    throw Error(ErrorCode::MissingFrequencyTable, "specificity analysis needs a frequency table");
  }
  Evidence evidence(brief, ruleset, brief.context.discipline_lexicon);
  return specificity_element(brief, evidence, ruleset, table, rank_threshold, topical_saturation);
}

ElementScore analyze_temporal(const AssessmentBrief& brief, const RuleSet& ruleset,
                              const Date& knowledge_cutoff,
                              std::span<const std::string> discipline_lexicon) {
  Evidence evidence(brief, ruleset, discipline_lexicon);
  return temporal_element(brief, evidence, ruleset, knowledge_cutoff);
}

StaticProfile run_static(const AssessmentBrief& brief, const StaticConfig& config) {
  if (!config.ruleset) throw Error(ErrorCode::InvalidArgument, "static analysis needs a rule set");
  if (!config.frequency) {
    throw Error(ErrorCode::MissingFrequencyTable, "static analysis needs a frequency table");
  }
  const RuleSet& ruleset = *config.ruleset;
  const Evidence evidence(brief, ruleset, brief.context.discipline_lexicon);

  StaticProfile profile;
  profile.brief_id = brief.id;
  profile.ruleset_version = ruleset.version();
  profile.freq_table_id = config.frequency->id();
  profile.knowledge_cutoff = brief.context.knowledge_cutoff;
  for (Element e : kAllElements) {
    switch (e) {
      case Element::Specificity:
        profile.elements[index_of(e)] =
            specificity_element(brief, evidence, ruleset, config.frequency.get(),
                                config.rank_threshold, config.topical_saturation);
        break;
      case Element::Temporal:
        profile.elements[index_of(e)] =
            temporal_element(brief, evidence, ruleset, brief.context.knowledge_cutoff);
        break;
      default:
        if (ruleset.count_for(e) == 0) {
          throw Error(ErrorCode::NoRulesForElement,
                      "rule set has no rules for element " + std::to_string(to_int(e)));
        }
        profile.elements[index_of(e)] = keyword_element(e, evidence, ruleset);
        break;
    }
  }
  return profile;
}

}  // namespace briefaudit
