#include "briefaudit/text.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace briefaudit::text {

namespace {

constexpr UChar32 kRightSingleQuote = 0x2019;

bool is_apostrophe(UChar32 c) { return c == '\'' || c == kRightSingleQuote; }

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  U8_APPEND_UNSAFE(buf, len, c);
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

std::vector<Token> tokenize_spans(std::string_view text) {
  std::vector<Token> tokens;
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  Token current;
  bool open = false;
  auto flush = [&](std::size_t end) {
    if (open) {
      current.span.end = end;
      tokens.push_back(std::move(current));
      current = Token{};
      open = false;
    }
  };
  while (i < length) {
    const int32_t start = i;
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (c >= 0 && u_isalnum(c)) {
      if (!open) {
        open = true;
        current.span.begin = static_cast<std::size_t>(start);
      }
      append_utf8(current.text, u_tolower(c));
      current.span.end = static_cast<std::size_t>(i);
    } else if (open && is_apostrophe(c)) {
      current.text.push_back('\'');
      current.span.end = static_cast<std::size_t>(i);
    } else {
      flush(static_cast<std::size_t>(start));
    }
  }
  flush(text.size());
  return tokens;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto& token : tokenize_spans(text)) out.push_back(std::move(token.text));
  return out;
}

std::vector<bool> word_mask(std::string_view text) {
  std::vector<bool> mask(text.size(), false);
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (c >= 0 && u_isalnum(c)) {
      for (int32_t j = start; j < i; ++j) mask[static_cast<std::size_t>(j)] = true;
    }
  }
  return mask;
}

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& ch : out) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return out;
}

bool is_valid_utf8(std::string_view text) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

bool is_digits(std::string_view token) {
  if (token.empty()) return false;
  for (char ch : token) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

std::size_t char_count(std::string_view text) {
  std::size_t n = 0;
  for (char ch : text) {
    if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string truncate_chars(std::string_view text, std::size_t max_chars, std::string_view marker) {
  std::size_t chars = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) == 0x80) continue;
    if (chars == max_chars) {
      std::string out(text.substr(0, i));
      out.append(marker);
      return out;
    }
    ++chars;
  }
  return std::string(text);
}

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n\f\v");
  return std::string(text.substr(first, last - first + 1));
}

}  // namespace briefaudit::text
