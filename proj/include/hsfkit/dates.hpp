#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace hsfkit {

using Date = std::chrono::year_month_day;

/// Parses an ISO `YYYY-MM-DD` date; throws SchemaError on malformed input.
Date parse_date(std::string_view text);

/// Formats as ISO `YYYY-MM-DD`.
std::string format_date(const Date& d);

/// Calendar days from `from` to `to` (negative when `to` precedes `from`).
long days_between(const Date& from, const Date& to);

Date add_days(const Date& d, long n);

}  // namespace hsfkit
