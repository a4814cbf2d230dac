#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace briefaudit {

/// Calendar date parsed from and printed as ISO-8601 `YYYY-MM-DD`.
class Date {
 public:
  constexpr Date() = default;
  Date(int year, unsigned month, unsigned day);

  static Date parse(std::string_view iso);
  static std::optional<Date> try_parse(std::string_view iso);

  int year() const { return static_cast<int>(ymd_.year()); }
  unsigned month() const { return static_cast<unsigned>(ymd_.month()); }
  unsigned day() const { return static_cast<unsigned>(ymd_.day()); }

  std::string iso() const;

  friend bool operator==(const Date&, const Date&) = default;
  friend auto operator<=>(const Date& a, const Date& b) { return a.ymd_ <=> b.ymd_; }

 private:
  std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::month{1},
                                   std::chrono::day{1}};
};

}  // namespace briefaudit
