#include <gtest/gtest.h>

#include "briefaudit/text.hpp"

using namespace briefaudit::text;
using Tokens = std::vector<std::string>;

TEST(Tokenize, SplitsAndLowercases) {
  EXPECT_EQ(tokenize("Write an essay."), (Tokens{"write", "an", "essay"}));
  EXPECT_EQ(tokenize(""), Tokens{});
}

TEST(Tokenize, KeepsInternalAndTrailingApostrophes) {
  EXPECT_EQ(tokenize("students' work-log"), (Tokens{"students'", "work", "log"}));
  EXPECT_EQ(tokenize("the model’s limits"), (Tokens{"the", "model's", "limits"}));
  EXPECT_EQ(tokenize("'quoted'"), (Tokens{"quoted'"}));
}

TEST(Tokenize, DigitRunsAreTokens) {
  EXPECT_EQ(tokenize("Analyse the 2024 dataset."), (Tokens{"analyse", "the", "2024", "dataset"}));
}

TEST(Tokenize, NonAsciiLetters) {
  EXPECT_EQ(tokenize("Café RÉSUMÉ naïve"), (Tokens{"café", "résumé", "naïve"}));
}

TEST(Tokenize, SpansIndexSource) {
  const std::string s = "Hi, Zoë!";
  auto tokens = tokenize_spans(s);
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(s.substr(tokens[1].span.begin, tokens[1].span.size()), "Zoë");
}

TEST(WordMask, MarksAlnumBytes) {
  auto mask = word_mask("a b");
  EXPECT_EQ(mask, (std::vector<bool>{true, false, true}));
  auto wide = word_mask("é");
  EXPECT_EQ(wide, (std::vector<bool>{true, true}));
}

TEST(Utf8, Validation) {
  EXPECT_TRUE(is_valid_utf8("plain"));
  EXPECT_TRUE(is_valid_utf8("\xE2\x80\x94"));
  EXPECT_FALSE(is_valid_utf8("\xC3"));
  EXPECT_FALSE(is_valid_utf8("\xFF\xFE"));
}

TEST(Truncate, AddsMarkerOnlyWhenNeeded) {
  EXPECT_EQ(truncate_chars("short", 10), "short");
  EXPECT_EQ(truncate_chars("abcdef", 3), "abc…");
  EXPECT_EQ(truncate_chars("ééééé", 2), "éé…");
  EXPECT_EQ(char_count("ééé"), 3u);
}
