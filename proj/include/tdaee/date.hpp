#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace tdaee {

// Calendar date with day resolution.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}
  Date(int year, unsigned month, unsigned day);

  // Parses `text` with a strftime-style format ("%Y-%m-%d" by default).
  // Returns nullopt for malformed or impossible dates.
  static std::optional<Date> parse(std::string_view text,
                                   std::string_view format = "%Y-%m-%d");

  constexpr std::chrono::sys_days days() const { return days_; }
  // Days since 1970-01-01.
  constexpr long serial() const { return days_.time_since_epoch().count(); }

  std::string iso() const;

  friend constexpr auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

}  // namespace tdaee
