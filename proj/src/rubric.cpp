#include "briefaudit/dynamic.hpp"

#include <algorithm>
#include <set>

#include "briefaudit/error.hpp"

namespace briefaudit {

namespace {

constexpr std::array<Element, 3> kComplianceCategories = {Element::Process, Element::Personalization,
                                                         Element::Ethics};
constexpr double kDemandedBelow = 0.5;

bool is_infeasible(const Deliverable& d, const StaticProfile& profile) {
  if (d.verb == "present" || d.verb == "record") return true;
  // Interactive collaboration cues inside the deliverable: text cannot stand
  // in for live participation.
  const auto& interactive = profile.at(Element::Collaboration).signals[0];
  return std::any_of(interactive.matches.begin(), interactive.matches.end(),
                     [&](const MatchRecord& m) { return m.span.overlaps(d.span); });
}

}  // namespace

bool object_covered(std::string_view object, const std::vector<std::string>& response_tokens,
                    const FrequencyTable& table, double threshold) {
  std::set<std::string> all;
  std::set<std::string> content;
  for (auto& token : text::tokenize(object)) {
    const auto rank = table.rank(token);
    if (!rank || *rank > kStopwordRank) content.insert(token);
    all.insert(std::move(token));
  }
  const auto& wanted = content.empty() ? all : content;
  if (wanted.empty()) return false;
  std::size_t present = 0;
  for (const auto& token : wanted) {
    if (std::find(response_tokens.begin(), response_tokens.end(), token) != response_tokens.end()) ++present;
  }
  return static_cast<double>(present) >= threshold * static_cast<double>(wanted.size());
}

RubricResult evaluate_response(const AssessmentBrief& brief, std::span<const Deliverable> deliverables,
                               const StaticProfile& profile, std::string_view response,
                               const Date& knowledge_cutoff, const RubricConfig& config) {
  (void)brief;
  if (config.ruleset == nullptr || config.frequency == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "rubric needs a rule set and a frequency table");
  }
  RubricResult result;
  const auto normalized = normalize_text(response, SourceFormat::Plain);
  auto tokens = text::tokenize(normalized.body);
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());

  std::size_t feasible = 0;
  for (const auto& d : deliverables) {
    if (is_infeasible(d, profile)) {
      result.infeasible.push_back(d.label());
      continue;
    }
    ++feasible;
    if (object_covered(d.object, tokens, *config.frequency, config.overlap_threshold)) {
      result.covered.push_back(d.label());
    } else {
      result.gaps.push_back(d.label());
    }
  }
  result.coverage = feasible == 0 ? 0.0
                                  : static_cast<double>(result.covered.size()) / static_cast<double>(feasible);

  AssessmentBrief response_doc;
  response_doc.id = "response";
  response_doc.body = normalized.body;
  response_doc.line_starts = normalized.line_starts;
  for (Element category : kComplianceCategories) {
    if (profile.at(category).vulnerability >= kDemandedBelow) continue;
    result.demanded_categories.push_back(to_int(category));
    if (config.ruleset->count_for(category) == 0) continue;
    const auto score = analyze_keyword_element(response_doc, *config.ruleset, category);
    const bool saturated = std::any_of(score.signals.begin(), score.signals.end(),
                                       [](const SubDimensionSignal& s) { return s.signal >= 1.0; });
    if (saturated) result.simulated_categories.push_back(to_int(category));
  }
  if (!result.demanded_categories.empty()) {
    result.simulated_compliance = static_cast<double>(result.simulated_categories.size()) /
                                  static_cast<double>(result.demanded_categories.size());
    result.exploit = kCoverageWeight * result.coverage + kComplianceWeight * result.simulated_compliance;
  } else {
    result.exploit = result.coverage;
  }
  result.exploit = std::clamp(result.exploit, 0.0, 1.0);

  for (const auto& mention : extract_years(normalized.body)) {
    if (mention.year >= knowledge_cutoff.year()) result.fabricated_years.push_back(mention.year);
  }
  return result;
}

}  // namespace briefaudit
