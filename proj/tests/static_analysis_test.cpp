#include <gtest/gtest.h>

#include "briefaudit/error.hpp"
#include "briefaudit/static_analysis.hpp"
#include "support.hpp"

using namespace briefaudit;
using testsupport::brief;
using testsupport::default_rules;
using testsupport::default_table;

namespace {

std::array<double, 3> signals(const ElementScore& s) {
  return {s.signals[0].signal, s.signals[1].signal, s.signals[2].signal};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

}  // namespace

TEST(Saturate, Examples) {
  EXPECT_DOUBLE_EQ(saturate(0, 3), 0.0);
  EXPECT_NEAR(saturate(2, 3), 0.6667, 1e-4);
  EXPECT_DOUBLE_EQ(saturate(5, 3), 1.0);
  EXPECT_THROW(saturate(1, 0), Error);
}

TEST(KeywordElement, DraftAndVersionHistory) {
  auto s = analyze_keyword_element(brief("Keep each draft and the version history of the file."), *default_rules(),
                                   Element::Process);
  EXPECT_NEAR(s.signals[0].signal, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(s.signals[1].signal, 0.0);
  EXPECT_EQ(s.signals[2].signal, 0.0);
  EXPECT_NEAR(s.resilience, 0.2222, 1e-4);
  EXPECT_NEAR(s.vulnerability, 0.7778, 1e-4);
  EXPECT_EQ(s.signals[0].matches.size(), 2u);
  EXPECT_DOUBLE_EQ(s.signals[0].positive_weight, 2.0);
}

TEST(KeywordElement, NoMatchesIsFullyVulnerable) {
  auto s = analyze_keyword_element(brief("Write an essay on marketing theory."), *default_rules(),
                                   Element::Personalization);
  EXPECT_EQ(signals(s), (std::array<double, 3>{0, 0, 0}));
  EXPECT_EQ(s.resilience, 0.0);
  EXPECT_EQ(s.vulnerability, 1.0);
}

TEST(KeywordElement, SaturatedCollaboration) {
  auto s = analyze_keyword_element(
      brief("Join the in-class debate and live peer review. Write a group report as a team output and synthesise "
            "the team contributions. Negotiate roles, keep meeting minutes and a contribution statement."),
      *default_rules(), Element::Collaboration);
  EXPECT_EQ(s.resilience, 1.0);
  EXPECT_EQ(s.vulnerability, 0.0);
}

TEST(KeywordElement, Errors) {
  const auto b = brief("Reflect.");
  EXPECT_EQ(code_of([&] { analyze_keyword_element(b, *default_rules(), 1); }), ErrorCode::UnknownElement);
  EXPECT_EQ(code_of([&] { analyze_keyword_element(b, *default_rules(), 9); }), ErrorCode::UnknownElement);
  EXPECT_EQ(code_of([&] { analyze_keyword_element(b, RuleSet{}, 3); }), ErrorCode::NoRulesForElement);
}

TEST(KeywordElement, PerDimensionSaturationAndPenalty) {
  auto rs = RuleSet::from_json(R"({"version": 1, "beta": 0.5,
    "saturation": {"3.developmental": 1}, "neg_saturation": {"3.justificatory": 1},
    "rules": [
      {"id": "d", "element": 3, "dimension": "developmental", "kind": "keyword", "pattern": "draft"},
      {"id": "j", "element": 3, "dimension": "justificatory", "kind": "keyword", "pattern": "justify", "weight": 2},
      {"id": "n", "element": 3, "dimension": "justificatory", "kind": "keyword", "pattern": "summarise",
       "polarity": "vulnerability_positive"}]})");
  auto s = analyze_keyword_element(brief("Draft it, justify it and summarise it."), rs, Element::Process);
  EXPECT_DOUBLE_EQ(s.signals[0].signal, 1.0);
  EXPECT_NEAR(s.signals[1].signal, 2.0 / 3.0 - 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(s.signals[1].negative_weight, 1.0);
  EXPECT_DOUBLE_EQ(s.signals[1].k_neg, 1.0);
}

TEST(Specificity, BareSwotIsClampedToZero) {
  auto s = analyze_specificity(brief("Use a SWOT on the business."), *default_rules(), default_table().get(),
                               kDefaultRankThreshold);
  EXPECT_EQ(signals(s), (std::array<double, 3>{0, 0, 0}));
  EXPECT_EQ(s.vulnerability, 1.0);
  ASSERT_EQ(s.signals[2].matches.size(), 1u);
  EXPECT_DOUBLE_EQ(s.signals[2].negative_weight, 1.0);
}

TEST(Specificity, TopicalSaturation) {
  // 20 eligible tokens, 3 unknown to the table: ratio 0.15.
  std::unordered_map<std::string, std::uint32_t> ranks;
  std::string body;
  for (int i = 0; i < 17; ++i) {
    const std::string w = "common" + std::string(1, static_cast<char>('a' + i));
    ranks[w] = 1000 + i;
    body += w + " ";
  }
  body += "rarea rareb rarec";
  FrequencyTable table(ranks, "t");
  auto s = analyze_specificity(brief(body), *default_rules(), &table, kDefaultRankThreshold);
  ASSERT_TRUE(s.signals[0].rarity);
  EXPECT_DOUBLE_EQ(s.signals[0].rarity->ratio, 0.15);
  EXPECT_NEAR(s.signals[0].signal, 0.5, 1e-12);

  auto all_rare = analyze_specificity(brief("xq yq zq"), *default_rules(), &table, kDefaultRankThreshold);
  EXPECT_DOUBLE_EQ(all_rare.signals[0].signal, 1.0);
  EXPECT_EQ(code_of([&] { analyze_specificity(brief("x"), *default_rules(), nullptr, 20000); }),
            ErrorCode::MissingFrequencyTable);
}

TEST(Specificity, NoveltyOutweighsGenericFramework) {
  auto s = analyze_specificity(brief("Adapt the framework, develop your own model and critique the model. Skip the SWOT "
                                     "and the SWOT table."),
                               *default_rules(), default_table().get(), kDefaultRankThreshold);
  EXPECT_DOUBLE_EQ(s.signals[2].signal, 0.5);
}

TEST(Temporal, ReferenceRecency) {
  const auto cutoff = Date::parse("2023-12-31");
  auto s = analyze_temporal(brief("Compare figures for 2024, 2021 and 2025."), *default_rules(), cutoff, {});
  EXPECT_EQ(s.signals[0].signal, 2.0 / 3.0);
  ASSERT_TRUE(s.signals[0].years);
  EXPECT_EQ(s.signals[0].years->years, (std::vector<int>{2024, 2021, 2025}));
  EXPECT_EQ(s.signals[0].years->cutoff_year, 2023);

  EXPECT_EQ(analyze_temporal(brief("No dates here."), *default_rules(), cutoff, {}).signals[0].signal, 0.0);
  EXPECT_EQ(analyze_temporal(brief("In 2023 and 2024."), *default_rules(), cutoff, {}).signals[0].signal, 1.0);
}

TEST(Temporal, EventAndLexicon) {
  const std::vector<std::string> lexicon = {"price index", "policy update"};
  auto s = analyze_temporal(brief("Use the latest price index and the current policy update."), *default_rules(),
                            Date::parse("2023-12-31"), lexicon);
  EXPECT_NEAR(s.signals[1].signal, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(s.signals[2].signal, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(s.signals[2].matches[0].rule_id, "lexicon:price index");
  auto none = analyze_temporal(brief("Use the price index."), *default_rules(), Date::parse("2023-12-31"), {});
  EXPECT_EQ(none.signals[2].signal, 0.0);
}

TEST(RunStatic, GenericFixtureIsVulnerableEverywhere) {
  auto b = load_brief_file(testsupport::fixture("generic.txt"), testsupport::context());
  auto p = run_static(b, testsupport::static_config());
  for (const auto& e : p.elements) EXPECT_GE(e.vulnerability, 0.9) << to_int(e.element);
  EXPECT_EQ(p.ruleset_version, 1);
  EXPECT_EQ(p.freq_table_id, default_table()->id());
}

TEST(RunStatic, ProcessFixtureMinimumOnElementThree) {
  auto p = run_static(load_brief_file(testsupport::fixture("process.txt"), testsupport::context()),
                      testsupport::static_config());
  for (const auto& e : p.elements) {
    if (e.element != Element::Process) EXPECT_GT(e.vulnerability, p.at(Element::Process).vulnerability);
  }
}

TEST(RunStatic, DeterministicAndBounded) {
  auto b = load_brief_file(testsupport::fixture("multimodal.txt"), testsupport::context());
  auto a = run_static(b, testsupport::static_config());
  auto c = run_static(b, testsupport::static_config());
  for (std::size_t i = 0; i < kElementCount; ++i) {
    EXPECT_EQ(a.elements[i].vulnerability, c.elements[i].vulnerability);
    EXPECT_EQ(a.elements[i].resilience + a.elements[i].vulnerability, 1.0);
    for (std::size_t d = 0; d < kDimensionsPerElement; ++d) {
      EXPECT_EQ(a.elements[i].signals[d].matches, c.elements[i].signals[d].matches);
      EXPECT_GE(a.elements[i].signals[d].signal, 0.0);
      EXPECT_LE(a.elements[i].signals[d].signal, 1.0);
    }
  }
}

TEST(RunStatic, CueAppendLowersOnlyItsElement) {
  const auto base_brief = load_brief_file(testsupport::fixture("generic.txt"), testsupport::context());
  const auto base = run_static(base_brief, testsupport::static_config());
  auto extended = brief(base_brief.body + " Keep a work log.");
  extended.id = base_brief.id;
  const auto after = run_static(extended, testsupport::static_config());
  for (Element e : kAllElements) {
    if (e == Element::Process) {
      EXPECT_LT(after.at(e).vulnerability, base.at(e).vulnerability);
    } else {
      EXPECT_EQ(after.at(e).vulnerability, base.at(e).vulnerability) << to_int(e);
    }
  }
}
