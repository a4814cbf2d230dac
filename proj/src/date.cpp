#include "briefaudit/date.hpp"

#include <charconv>
#include <cstdio>

#include "briefaudit/error.hpp"

namespace briefaudit {

Date::Date(int year, unsigned month, unsigned day)
    : ymd_{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}} {
  if (!ymd_.ok()) {
    throw Error(ErrorCode::SchemaError, "invalid calendar date");
  }
}

std::optional<Date> Date::try_parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  auto number = [&](std::size_t pos, std::size_t len, int& out) {
    auto first = iso.data() + pos;
    auto last = first + len;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
  };
  int y = 0, m = 0, d = 0;
  if (!number(0, 4, y) || !number(5, 2, m) || !number(8, 2, d)) return std::nullopt;
  if (m < 1 || d < 1) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

Date Date::parse(std::string_view iso) {
  auto parsed = try_parse(iso);
  if (!parsed) {
    throw Error(ErrorCode::SchemaError, "expected YYYY-MM-DD date, got '" + std::string(iso) + "'");
  }
  return *parsed;
}

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
  return buf;
}

}  // namespace briefaudit
