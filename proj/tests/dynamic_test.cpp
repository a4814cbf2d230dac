#include <gtest/gtest.h>

#include <atomic>

#include "briefaudit/backend.hpp"
#include "briefaudit/dynamic.hpp"
#include "briefaudit/error.hpp"
#include "support.hpp"

using namespace briefaudit;
using testsupport::brief;

namespace {

const char* kFourTasks =
    "Analyse the regional sales figures. Compare the two pricing models. "
    "Propose a revised distribution plan. Justify the budget allocation.";

RubricConfig rubric_config() {
  return {testsupport::default_rules().get(), testsupport::default_table().get(), kDefaultOverlapThreshold};
}

DynamicConfig dynamic_config(std::vector<AttackStrategy> strategies) {
  DynamicConfig c;
  c.strategies = std::move(strategies);
  c.rubric = rubric_config();
  return c;
}

MockBackend mock(double c, std::set<Element> categories = {}, std::uint64_t seed = 1) {
  return MockBackend({c, std::move(categories), seed, {}});
}

class FailingBackend : public GeneratorBackend {
 public:
  std::string generate(std::string_view, std::string_view) const override {
    calls++;
    throw Error(ErrorCode::RemoteError, "unreachable");
  }
  nlohmann::json descriptor() const override { return {{"kind", "failing"}}; }
  mutable std::atomic<int> calls{0};
};

}  // namespace

TEST(Strategy, Validation) {
  EXPECT_NO_THROW(AttackStrategy::iterative(5).validate(5));
  EXPECT_THROW(AttackStrategy::iterative(6).validate(5), Error);
  EXPECT_THROW(AttackStrategy::iterative(1).validate(5), Error);
  EXPECT_THROW((AttackStrategy{StrategyKind::SingleShot, 2}).validate(5), Error);
  EXPECT_EQ(parse_strategy_kind("context_injection"), StrategyKind::ContextInjection);
  EXPECT_THROW(parse_strategy_kind("jailbreak"), Error);
}

TEST(Prompt, SingleShotIsTemplatePlusBody) {
  auto b = brief("Discuss the case.\nProduce a memo.");
  auto p = build_prompt(b, AttackStrategy::single_shot(), 1, {}, {});
  EXPECT_EQ(p,
            "Complete the following assessment as a student would, producing the full submission.\n\n"
            "Assessment brief:\nDiscuss the case.\nProduce a memo.");
}

TEST(Prompt, IterativeRevisionClause) {
  auto b = brief("Discuss the case and produce a reflective report.");
  const auto round1 = build_prompt(b, AttackStrategy::iterative(), 1, {}, {});
  std::vector<std::string> gaps = {"produce a reflective report"};
  const auto round2 = build_prompt(b, AttackStrategy::iterative(), 2, gaps, {});
  EXPECT_EQ(round2, round1 + "\n\nYour previous answer did not address: produce a reflective report. Revise to address them.");
  EXPECT_THROW(build_prompt(b, AttackStrategy::iterative(), 1, gaps, {}), Error);
  EXPECT_THROW(build_prompt(b, AttackStrategy::iterative(3), 4, {}, {}), Error);
}

TEST(Prompt, ContextInjectionAddsMaterials) {
  auto b = brief("Analyse Dataset A.");
  std::vector<ResourceDescriptor> resources = {{"Dataset A", std::string("region,sales\nnorth,10")},
                                               {"Slides", std::nullopt}};
  auto p = build_prompt(b, AttackStrategy::context_injection(), 1, {}, resources);
  EXPECT_NE(p.find("Materials provided:"), std::string::npos);
  EXPECT_NE(p.find("- Dataset A:\nregion,sales\nnorth,10"), std::string::npos);
  EXPECT_EQ(build_prompt(b, AttackStrategy::single_shot(), 1, {}, resources).find("Materials"), std::string::npos);
}

TEST(Prompt, TooLarge) {
  auto b = brief(std::string(2000, 'a'));
  try {
    build_prompt(b, AttackStrategy::single_shot(), 1, {}, {}, 1024);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PromptTooLarge);
  }
}

TEST(Mock, HalfCoverageNamesFirstTwoOfFour) {
  const auto b = brief(kFourTasks);
  auto prompt = build_prompt(b, AttackStrategy::single_shot(), 1, {}, {});
  auto response = mock(0.5).generate(system_prompt(), prompt);
  EXPECT_NE(response.find("the regional sales figures"), std::string::npos);
  EXPECT_NE(response.find("the two pricing models"), std::string::npos);
  EXPECT_EQ(response.find("a revised distribution plan"), std::string::npos);
  EXPECT_EQ(response.find("the budget allocation"), std::string::npos);
}

TEST(Mock, ZeroCoverageNamesNothing) {
  auto prompt = build_prompt(brief(kFourTasks), AttackStrategy::single_shot(), 1, {}, {});
  auto response = mock(0.0).generate(system_prompt(), prompt);
  EXPECT_EQ(response.find("regional"), std::string::npos);
  EXPECT_EQ(response.find("pricing"), std::string::npos);
}

TEST(Mock, DeterministicAndSeeded) {
  auto prompt = build_prompt(brief(kFourTasks), AttackStrategy::single_shot(), 1, {}, {});
  EXPECT_EQ(mock(1, {}, 3).generate(system_prompt(), prompt), mock(1, {}, 3).generate(system_prompt(), prompt));
  EXPECT_THROW(mock(1.5), Error);
  EXPECT_THROW(mock(1, {Element::Resources}), Error);
  EXPECT_EQ(mock(0.25, {Element::Ethics}, 9).descriptor().at("kind"), "mock");
}

TEST(Rubric, HalfCoverageNoCategories) {
  const auto b = brief(kFourTasks);
  auto profile = run_static(b, testsupport::static_config());
  auto deliverables = extract_deliverables(b, default_verb_list());
  ASSERT_EQ(deliverables.size(), 4u);
  auto r = evaluate_response(b, deliverables, profile, "I looked at regional sales figures and both pricing models.",
                             b.context.knowledge_cutoff, rubric_config());
  EXPECT_DOUBLE_EQ(r.coverage, 0.5);
  EXPECT_TRUE(r.demanded_categories.empty());
  EXPECT_DOUBLE_EQ(r.exploit, 0.5);
  EXPECT_EQ(r.gaps, (std::vector<std::string>{"propose a revised distribution plan", "justify the budget allocation"}));
}

TEST(Rubric, FullCoverageAllCategoriesSimulated) {
  const auto b = brief(
      "Discuss the case study. Keep every draft and a work log, justify each choice with a rationale, and reflect "
      "on the limitations of your method. Draw on your own experience and your placement and relate it to your "
      "goals and your future role. Identify the ethical issues for each stakeholder and weigh the trade-off "
      "between stakeholders to resolve the dilemma.");
  auto profile = run_static(b, testsupport::static_config());
  auto deliverables = extract_deliverables(b, default_verb_list());
  auto prompt = build_prompt(b, AttackStrategy::single_shot(), 1, {}, {});
  auto response = mock(1.0, {Element::Process, Element::Personalization, Element::Ethics}).generate(system_prompt(), prompt);
  auto r = evaluate_response(b, deliverables, profile, response, b.context.knowledge_cutoff, rubric_config());
  EXPECT_EQ(r.demanded_categories, (std::vector<int>{3, 4, 7}));
  EXPECT_EQ(r.simulated_categories, (std::vector<int>{3, 4, 7}));
  EXPECT_DOUBLE_EQ(r.coverage, 1.0);
  EXPECT_DOUBLE_EQ(r.exploit, 1.0);

  auto bare = evaluate_response(b, deliverables, profile, "Nothing useful.", b.context.knowledge_cutoff, rubric_config());
  EXPECT_DOUBLE_EQ(bare.simulated_compliance, 0.0);
  EXPECT_DOUBLE_EQ(bare.exploit, 0.0);
}

TEST(Rubric, RecordingIsInfeasible) {
  const auto b = brief("Analyse the market data. Record a presentation. Propose a pricing plan.");
  auto profile = run_static(b, testsupport::static_config());
  auto deliverables = extract_deliverables(b, default_verb_list());
  ASSERT_EQ(deliverables.size(), 3u);
  auto r = evaluate_response(b, deliverables, profile, "The market data show growth.", b.context.knowledge_cutoff,
                             rubric_config());
  EXPECT_EQ(r.infeasible, (std::vector<std::string>{"record a presentation"}));
  EXPECT_DOUBLE_EQ(r.coverage, 0.5);
}

TEST(Rubric, InteractiveDeliverableIsInfeasible) {
  const auto b = brief("Discuss your findings in the live debate. Compare the two policies.");
  auto profile = run_static(b, testsupport::static_config());
  auto r = evaluate_response(b, extract_deliverables(b, default_verb_list()), profile, "Both policies differ.",
                             b.context.knowledge_cutoff, rubric_config());
  EXPECT_EQ(r.infeasible.size(), 1u);
  EXPECT_DOUBLE_EQ(r.coverage, 1.0);
}

TEST(Rubric, InfeasibleDeliverablesDoNotAffectCoverage) {
  const auto with = brief("Analyse the market data. Propose a pricing plan. Record a video walkthrough.");
  const auto without = brief("Analyse the market data. Propose a pricing plan.");
  const std::string response = "The market data are mixed.";
  auto coverage = [&](const AssessmentBrief& b) {
    return evaluate_response(b, extract_deliverables(b, default_verb_list()), run_static(b, testsupport::static_config()),
                             response, b.context.knowledge_cutoff, rubric_config())
        .coverage;
  };
  EXPECT_DOUBLE_EQ(coverage(with), coverage(without));
}

TEST(Rubric, CoverageMonotoneInResponse) {
  const auto b = brief(kFourTasks);
  auto profile = run_static(b, testsupport::static_config());
  auto deliverables = extract_deliverables(b, default_verb_list());
  std::string response = "Intro.";
  double previous = 0;
  for (const char* addition : {" The regional sales figures rose.", " Pricing models differ.",
                               " A revised distribution plan follows.", " The budget allocation is fair."}) {
    response += addition;
    auto r = evaluate_response(b, deliverables, profile, response, b.context.knowledge_cutoff, rubric_config());
    EXPECT_GE(r.coverage, previous);
    EXPECT_GE(r.exploit, 0.0);
    EXPECT_LE(r.exploit, 1.0);
    previous = r.coverage;
  }
  EXPECT_DOUBLE_EQ(previous, 1.0);
}

TEST(Rubric, FabricatedYearsFlagged) {
  const auto b = brief("Discuss the case.");
  auto r = evaluate_response(b, extract_deliverables(b, default_verb_list()), run_static(b, testsupport::static_config()),
                             "In 2019 and again in 2024 and 2026 the case changed.", Date::parse("2023-12-31"),
                             rubric_config());
  EXPECT_EQ(r.fabricated_years, (std::vector<int>{2024, 2026}));
}

TEST(RunDynamic, MockFullCoverage) {
  const auto b = brief("Critically evaluate the provided dataset and produce a reflective report. Discuss the main trends.");
  auto profile = run_static(b, testsupport::static_config());
  auto result = run_dynamic(b, profile, dynamic_config({AttackStrategy::single_shot()}), mock(1.0));
  ASSERT_EQ(result.attempts.size(), 1u);
  EXPECT_DOUBLE_EQ(result.exploit_max, 1.0);
  EXPECT_EQ(result.attempts[0].transcript.size(), 1u);
  EXPECT_EQ(result.template_version, "v1");
}

TEST(RunDynamic, FailuresRecordedNotFatal) {
  const auto b = brief(kFourTasks);
  FailingBackend backend;
  auto result = run_dynamic(b, run_static(b, testsupport::static_config()),
                            dynamic_config({AttackStrategy::single_shot(), AttackStrategy::iterative(2)}), backend);
  ASSERT_EQ(result.attempts.size(), 2u);
  EXPECT_EQ(result.exploit_max, 0.0);
  for (const auto& a : result.attempts) {
    ASSERT_TRUE(a.error.has_value());
    EXPECT_NE(a.error->find("RemoteError"), std::string::npos);
    EXPECT_EQ(a.exploit, 0.0);
  }
  EXPECT_EQ(backend.calls.load(), 2);
}

TEST(RunDynamic, IterativeBeatsSingleShotAtLowCoverage) {
  const auto b = brief(kFourTasks);
  auto profile = run_static(b, testsupport::static_config());
  auto result = run_dynamic(b, profile, dynamic_config({AttackStrategy::single_shot(), AttackStrategy::iterative(3)}),
                            mock(0.25));
  ASSERT_EQ(result.attempts.size(), 2u);
  const auto& single = result.attempts[0];
  const auto& iter = result.attempts[1];
  EXPECT_EQ(iter.transcript.size(), 3u);
  EXPECT_GT(iter.exploit, single.exploit);
  EXPECT_DOUBLE_EQ(result.exploit_max, iter.exploit);
  EXPECT_DOUBLE_EQ(result.exploit_mean, (single.exploit + iter.exploit) / 2);
  EXPECT_NE(iter.transcript[1].prompt.find("Your previous answer did not address:"), std::string::npos);
}

TEST(RunDynamic, DeterministicUnderConcurrency) {
  const auto b = brief(kFourTasks);
  auto profile = run_static(b, testsupport::static_config());
  auto config = dynamic_config({AttackStrategy::iterative(2), AttackStrategy::single_shot(),
                                AttackStrategy::context_injection(), AttackStrategy::iterative(4)});
  config.concurrency_limit = 4;
  auto a = run_dynamic(b, profile, config, mock(0.5, {}, 11));
  auto c = run_dynamic(b, profile, config, mock(0.5, {}, 11));
  ASSERT_EQ(a.attempts.size(), 4u);
  for (std::size_t i = 0; i < a.attempts.size(); ++i) {
    EXPECT_EQ(a.attempts[i].strategy.kind, config.strategies[i].kind);
    EXPECT_EQ(a.attempts[i].final_response, c.attempts[i].final_response);
    EXPECT_EQ(a.attempts[i].exploit, c.attempts[i].exploit);
  }
}
