#include <gtest/gtest.h>

#include "briefaudit/dynamic.hpp"
#include "support.hpp"

using namespace briefaudit;
using testsupport::brief;

namespace {

std::vector<std::pair<std::string, std::string>> pairs(std::string_view body) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& d : extract_deliverables(brief(body), default_verb_list())) out.emplace_back(d.verb, d.object);
  return out;
}

using Pairs = std::vector<std::pair<std::string, std::string>>;

}  // namespace

TEST(Deliverables, CoordinatedVerbs) {
  EXPECT_EQ(pairs("Critically evaluate the provided dataset and produce a reflective report."),
            (Pairs{{"evaluate", "the provided dataset"}, {"produce", "a reflective report"}}));
}

TEST(Deliverables, NonImperativeIgnored) {
  EXPECT_EQ(pairs("The dataset was evaluated last year."), Pairs{});
  EXPECT_EQ(pairs("Write an essay on marketing theory."), Pairs{});
}

TEST(Deliverables, SentenceAndLineStarts) {
  auto b = load_brief("Task one\nDiscuss the trends\nCompare two firms; design a survey.", SourceFormat::Plain,
                      testsupport::context());
  auto d = extract_deliverables(b, default_verb_list());
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0].label(), "discuss the trends");
  EXPECT_EQ(d[1].label(), "compare two firms");
  EXPECT_EQ(d[2].label(), "design a survey");
  EXPECT_EQ(b.body.substr(d[0].span.begin, 7), "Discuss");
}

TEST(Deliverables, CommaAndThenCoordination) {
  EXPECT_EQ(pairs("Analyse the market, compare the rivals, then propose a plan."),
            (Pairs{{"analyse", "the market"}, {"compare", "the rivals"}, {"propose", "a plan"}}));
}

TEST(Deliverables, RepeatsRemovedButMentionsKept) {
  const auto b = brief("Discuss the case. Discuss the case. Discuss the Case.");
  EXPECT_EQ(extract_deliverables(b, default_verb_list()).size(), 1u);
  EXPECT_EQ(find_deliverable_mentions(b.body, b.line_starts, default_verb_list()).size(), 3u);
}

TEST(Deliverables, ObjectTruncated) {
  std::string body = "Discuss " + std::string(300, 'x') + ".";
  auto d = extract_deliverables(brief(body), default_verb_list());
  ASSERT_EQ(d.size(), 1u);
  EXPECT_LE(d[0].object.size(), kMaxObjectChars);
}

TEST(Deliverables, CustomVerbList) {
  std::vector<std::string> verbs = {"write"};
  auto d = extract_deliverables(brief("Write an essay on marketing theory."), verbs);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].object, "an essay on marketing theory");
}
