#include "hsfkit/dates.hpp"

#include <cstdio>

#include "hsfkit/errors.hpp"

namespace hsfkit {

Date parse_date(std::string_view text) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  char tail = 0;
  const std::string s(text);
  if (std::sscanf(s.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3) {
    throw SchemaError("malformed date '" + s + "' (expected YYYY-MM-DD)");
  }
  const Date date{std::chrono::year{y}, std::chrono::month{m},
                  std::chrono::day{d}};
  if (!date.ok()) {
    throw SchemaError("invalid calendar date '" + s + "'");
  }
  return date;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(d.year()),
                unsigned(d.month()), unsigned(d.day()));
  return buf;
}

long days_between(const Date& from, const Date& to) {
  const std::chrono::sys_days a{from};
  const std::chrono::sys_days b{to};
  return (b - a).count();
}

Date add_days(const Date& d, long n) {
  return Date{std::chrono::sys_days{d} + std::chrono::days{n}};
}

}  // namespace hsfkit
