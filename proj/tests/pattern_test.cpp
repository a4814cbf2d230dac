#include <gtest/gtest.h>

#include "briefaudit/error.hpp"
#include "briefaudit/pattern.hpp"
#include "briefaudit/text.hpp"

using namespace briefaudit;

namespace {

std::vector<std::string> find(const Pattern& p, std::string_view body) {
  const auto lowered = text::ascii_lower(body);
  std::vector<std::string> out;
  for (auto s : p.find_all(lowered, text::word_mask(body))) out.emplace_back(body.substr(s.begin, s.size()));
  return out;
}

using Hits = std::vector<std::string>;

}  // namespace

TEST(Pattern, LiteralIsCaseInsensitiveAndWordDelimited) {
  auto p = Pattern::literal("reflect");
  EXPECT_EQ(find(p, "Reflect on your draft and reflect again"), (Hits{"Reflect", "reflect"}));
  EXPECT_EQ(find(p, "reflection"), Hits{});
  EXPECT_EQ(find(p, "unreflect"), Hits{});
}

TEST(Pattern, LiteralWhitespaceAndMetacharacters) {
  EXPECT_EQ(find(Pattern::literal("version   history"), "the Version history file"), (Hits{"Version history"}));
  EXPECT_EQ(find(Pattern::literal("4 ps (core)"), "the 4 Ps (core) list"), (Hits{"4 Ps (core)"}));
}

TEST(Pattern, AlternationAndClasses) {
  auto p = Pattern::compile("evolv(e|es|ed|ing)");
  EXPECT_EQ(find(p, "it evolved and evolves; evolution"), (Hits{"evolved", "evolves"}));
  EXPECT_EQ(find(Pattern::compile("week [0-9]+"), "Week 12 and week x"), (Hits{"Week 12"}));
  EXPECT_EQ(find(Pattern::compile("analy[sz]e"), "Analyze or analyse"), (Hits{"Analyze", "analyse"}));
  EXPECT_EQ(find(Pattern::compile("[^a-z ]x"), "Ax 9x"), (Hits{"9x"}));
}

TEST(Pattern, BoundedRepetitionLeftmostLongest) {
  auto p = Pattern::compile("combine .{0,40}(data|audio)");
  EXPECT_EQ(find(p, "Combine the audio with the data now"), (Hits{"Combine the audio with the data"}));
  EXPECT_EQ(find(Pattern::compile("a{2,3}"), "aaaa aaa aa a"), (Hits{"aaa", "aa"}));
  EXPECT_EQ(find(Pattern::compile("x{2}"), "xx xxx"), (Hits{"xx"}));
}

TEST(Pattern, NonOverlapping) {
  EXPECT_EQ(find(Pattern::compile("ab ab"), "ab ab ab ab"), (Hits{"ab ab", "ab ab"}));
}

TEST(Pattern, Escapes) {
  EXPECT_EQ(find(Pattern::compile("\\d+"), "room 101 and 7"), (Hits{"101", "7"}));
  EXPECT_EQ(find(Pattern::compile("porter('|’)?s"), "Porter’s and porters"), (Hits{"Porter’s", "porters"}));
}

TEST(Pattern, RestrictedGrammarRejections) {
  for (const char* bad : {"^start", "end$", "(?i)x", "(a)\\1", "\\q", "(open", "a{3,1}", "[z-a]", "a{300}", "*"}) {
    EXPECT_THROW(Pattern::compile(bad), Error) << bad;
  }
}

TEST(Pattern, DoesNotMatchInsideMultibyteLetters) {
  // "é" is alphanumeric: "caf" inside "café" is not a word.
  EXPECT_EQ(find(Pattern::literal("caf"), "café caf"), (Hits{"caf"}));
}

TEST(Pattern, LinearOnPathologicalInput) {
  auto p = Pattern::compile("(a|aa)+b");
  std::string body(20000, 'a');
  EXPECT_TRUE(find(p, body).empty());
}
