#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace briefaudit::text {

/// Half-open byte range [begin, end) into a normalized body.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool overlaps(const Span& other) const { return begin < other.end && other.begin < end; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
  std::string text;
  Span span;
};

/// Lowercased word tokens split on non-alphanumeric code points. An apostrophe
/// (ASCII or U+2019) continues a token that has already started, so
/// "students'" and "don't" stay whole; it is emitted as ASCII `'`.
std::vector<Token> tokenize_spans(std::string_view text);
std::vector<std::string> tokenize(std::string_view text);

/// Per-byte flag: true when the byte belongs to an alphanumeric code point.
std::vector<bool> word_mask(std::string_view text);

/// Lowercases ASCII letters only, so byte offsets are preserved.
std::string ascii_lower(std::string_view text);

bool is_valid_utf8(std::string_view text);
bool is_digits(std::string_view token);

/// Number of code points.
std::size_t char_count(std::string_view text);

/// First `max_chars` code points, followed by `marker` when anything was cut.
std::string truncate_chars(std::string_view text, std::size_t max_chars,
                           std::string_view marker = "…");

std::string trim(std::string_view text);

}  // namespace briefaudit::text
