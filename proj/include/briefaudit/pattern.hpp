#pragma once

#include <bitset>
#include <string>
#include <string_view>
#include <vector>

#include "briefaudit/text.hpp"

namespace briefaudit {

/// Case-insensitive restricted regular pattern compiled to a Thompson NFA.
///
/// Grammar: literals, `.`, character classes (`[a-z]`, `[^...]`), escapes
/// (`\d`, `\w`, `\s` and escaped metacharacters), groups, alternation and the
/// repetitions `?`, `*`, `+`, `{m}`, `{m,}`, `{m,n}` (counts up to 255).
/// Backreferences, anchors and lookaround are rejected, so matching is linear
/// in the input for a fixed pattern.
///
/// Matches never split a word: a match may not start or end between two
/// alphanumeric code points.
class Pattern {
 public:
  static Pattern compile(std::string_view source);
  /// Literal text; each run of spaces matches exactly one space.
  static Pattern literal(std::string_view text);

  /// Leftmost-longest, non-overlapping matches over `lowered` (ASCII-lowered
  /// body) using the body's word mask.
  std::vector<text::Span> find_all(std::string_view lowered, const std::vector<bool>& word) const;

  std::size_t state_count() const { return states_.size(); }

 private:
  struct State {
    enum class Kind { Byte, Split, Match } kind = Kind::Match;
    std::bitset<256> bytes;
    int out = -1;
    int out1 = -1;
  };

  friend class PatternCompiler;
  std::vector<State> states_;
  int start_ = -1;
};

}  // namespace briefaudit
