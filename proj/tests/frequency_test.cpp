#include <gtest/gtest.h>

#include <random>

#include "briefaudit/error.hpp"
#include "briefaudit/frequency.hpp"
#include "support.hpp"

using namespace briefaudit;

namespace {

FrequencyTable table(std::initializer_list<std::pair<const char*, std::uint32_t>> entries) {
  std::unordered_map<std::string, std::uint32_t> m;
  for (auto [t, r] : entries) m[t] = r;
  return FrequencyTable(std::move(m), "test");
}

}  // namespace

TEST(Rarity, AllCommonIsZero) {
  auto t = table({{"market", 300}, {"theory", 900}, {"essay", 1000}});
  std::vector<std::string> tokens = {"market", "theory", "essay"};
  EXPECT_DOUBLE_EQ(rarity_ratio(tokens, t, 20000), 0.0);
}

TEST(Rarity, AllUnknownIsOne) {
  std::vector<std::string> tokens = {"zyx", "quorb"};
  EXPECT_DOUBLE_EQ(rarity_ratio(tokens, table({}), 20000), 1.0);
}

TEST(Rarity, StopwordsExcludedFromDenominator) {
  auto t = table({{"the", 50}, {"report", 5000}, {"stakeholder", 30000}});
  std::vector<std::string> tokens = {"the", "report", "stakeholder", "zyx"};
  auto c = rarity_count(tokens, t, 20000);
  EXPECT_EQ(c.eligible, 3u);
  EXPECT_EQ(c.rare, 2u);
  EXPECT_DOUBLE_EQ(c.ratio(), 2.0 / 3.0);
}

TEST(Rarity, DigitsExcludedAndEmptyIsZero) {
  std::vector<std::string> tokens = {"2024", "17"};
  EXPECT_DOUBLE_EQ(rarity_ratio(tokens, table({}), 20000), 0.0);
  EXPECT_THROW(rarity_ratio(tokens, table({}), 0), Error);
}

TEST(Rarity, MonotoneInRank) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::uint32_t> rank(1, 60000);
  for (int trial = 0; trial < 200; ++trial) {
    std::unordered_map<std::string, std::uint32_t> m;
    std::vector<std::string> tokens;
    for (int i = 0; i < 12; ++i) {
      tokens.push_back("t" + std::to_string(i));
      m[tokens.back()] = rank(rng);
    }
    const double before = rarity_ratio(tokens, FrequencyTable(m, "a"), 20000);
    auto& victim = m[tokens[trial % tokens.size()]];
    if (victim <= kStopwordRank) continue;  // only eligible tokens are in scope
    victim += rank(rng);
    EXPECT_GE(rarity_ratio(tokens, FrequencyTable(m, "b"), 20000), before);
  }
}

TEST(FrequencyTable, PossessiveFallsBackToStem) {
  auto t = table({{"student", 900}, {"model", 700}});
  EXPECT_EQ(t.rank("students'"), std::nullopt);
  EXPECT_EQ(t.rank("student'"), 900u);
  EXPECT_EQ(t.rank("model's"), 700u);
  EXPECT_EQ(t.rank("absent"), std::nullopt);
}

TEST(FrequencyTable, ParseTsv) {
  auto t = FrequencyTable::parse_tsv("the\t1\nof\t2\n\nessay\t10\n", "x");
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.rank("essay"), 10u);
  EXPECT_THROW(FrequencyTable::parse_tsv("a\t2\nb\t2\n", "x"), Error);
  EXPECT_THROW(FrequencyTable::parse_tsv("a\t0\n", "x"), Error);
  EXPECT_THROW(FrequencyTable::parse_tsv("a 1\n", "x"), Error);
}

TEST(FrequencyTable, BundledTable) {
  const auto& t = *testsupport::default_table();
  EXPECT_EQ(t.size(), 50000u);
  EXPECT_EQ(t.rank("the"), 1u);
  EXPECT_LT(*t.rank("essay"), 20000u);
  EXPECT_GT(*t.rank("stakeholder"), 20000u);
  EXPECT_EQ(t.id().rfind("en_freq_50k.tsv:", 0), 0u);
}
