#include "hsfkit/price_series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

#include "hsfkit/errors.hpp"

namespace hsfkit {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(strip(line.substr(start)));
      break;
    }
    fields.push_back(strip(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

double parse_price(std::string_view field, std::string_view date_text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.begin(), field.end(), v);
  if (ec != std::errc{} || ptr != field.end()) {
    throw SchemaError("unparseable price '" + std::string(field) +
                      "' on row " + std::string(date_text));
  }
  return v;
}

std::string format_value(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::size_t PriceSeries::position_of(std::int64_t index) const {
  const auto it = std::lower_bound(day_index.begin(), day_index.end(), index);
  if (it == day_index.end() || *it != index) {
    throw BoundsError("day_index " + std::to_string(index) +
                      " not present in series '" + label + "'");
  }
  return static_cast<std::size_t>(it - day_index.begin());
}

void PriceSeries::validate() const {
  if (dates.size() != values.size() || day_index.size() != values.size()) {
    throw SchemaError("series '" + label + "' has mismatched column lengths");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] <= 0.0) {
      throw SchemaError("series '" + label + "' has non-positive price " +
                        format_value(values[i]) + " on " +
                        format_date(dates[i]));
    }
    if (i > 0 && days_between(dates[i - 1], dates[i]) <= 0) {
      throw SchemaError("series '" + label + "' dates not strictly increasing at " +
                        format_date(dates[i]));
    }
    if (i > 0 && day_index[i] <= day_index[i - 1]) {
      throw SchemaError("series '" + label +
                        "' day_index not strictly increasing");
    }
  }
}

ParsedCsv parse_price_csv(std::string_view csv_text, const std::string& column,
                          const std::string& label) {
  std::size_t pos = 0;
  const auto next_line = [&]() -> std::string_view {
    if (pos >= csv_text.size()) return {};
    const std::size_t nl = csv_text.find('\n', pos);
    std::string_view line;
    if (nl == std::string_view::npos) {
      line = csv_text.substr(pos);
      pos = csv_text.size();
    } else {
      line = csv_text.substr(pos, nl - pos);
      pos = nl + 1;
    }
    return line;
  };

  // Header: locate the date column and the requested price column.
  std::string_view header = next_line();
  while (pos < csv_text.size() && strip(header).empty()) header = next_line();
  const auto columns = split_line(header);
  std::ptrdiff_t date_col = -1;
  std::ptrdiff_t price_col = -1;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (iequals(columns[i], "Date")) date_col = static_cast<std::ptrdiff_t>(i);
    if (columns[i] == column) price_col = static_cast<std::ptrdiff_t>(i);
  }
  if (date_col < 0 || price_col < 0) {
    std::string available;
    for (const auto& c : columns) {
      if (!available.empty()) available += ", ";
      available += std::string(c);
    }
    throw SchemaError("column '" + (price_col < 0 ? column : "Date") +
                      "' not found; available columns: " + available);
  }

  struct Row {
    Date date;
    double value;
  };
  std::vector<Row> rows;
  std::size_t dropped = 0;
  while (pos < csv_text.size()) {
    const std::string_view line = next_line();
    if (strip(line).empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() <= std::size_t(std::max(date_col, price_col))) {
      throw SchemaError("row '" + std::string(line) + "' has too few fields");
    }
    const std::string_view date_text = fields[std::size_t(date_col)];
    const std::string_view price_text = fields[std::size_t(price_col)];
    if (price_text.empty() || iequals(price_text, "null")) {
      ++dropped;
      continue;
    }
    rows.push_back(
        {parse_date(date_text), parse_price(price_text, date_text)});
  }

  if (rows.empty()) {
    throw EmptyDataError("no valid price rows for column '" + column + "'");
  }

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::chrono::sys_days{a.date} < std::chrono::sys_days{b.date};
  });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].date == rows[i - 1].date) {
      throw DuplicateDateError("duplicate date " + format_date(rows[i].date));
    }
  }

  PriceSeries series;
  series.label = label;
  series.dates.reserve(rows.size());
  series.values.reserve(rows.size());
  series.day_index.resize(rows.size());
  for (const auto& r : rows) {
    series.dates.push_back(r.date);
    series.values.push_back(r.value);
  }
  std::iota(series.day_index.begin(), series.day_index.end(), std::int64_t{0});
  series.validate();
  return {std::move(series), dropped};
}

std::string to_csv(const PriceSeries& series) {
  std::string out = "date,value\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += format_date(series.dates[i]);
    out += ',';
    out += format_value(series.values[i]);
    out += '\n';
  }
  return out;
}

PriceSeries slice(const PriceSeries& series, const Date& from_date,
                  const Date& to_date) {
  if (days_between(from_date, to_date) < 0) {
    throw ParameterError("slice: from_date " + format_date(from_date) +
                         " is after to_date " + format_date(to_date));
  }
  const auto lo = std::lower_bound(
      series.dates.begin(), series.dates.end(), from_date,
      [](const Date& a, const Date& b) {
        return std::chrono::sys_days{a} < std::chrono::sys_days{b};
      });
  const auto hi = std::upper_bound(
      series.dates.begin(), series.dates.end(), to_date,
      [](const Date& a, const Date& b) {
        return std::chrono::sys_days{a} < std::chrono::sys_days{b};
      });
  if (lo >= hi) {
    throw EmptyWindowError("slice [" + format_date(from_date) + ", " +
                           format_date(to_date) + "] contains no samples");
  }
  const std::size_t a = std::size_t(lo - series.dates.begin());
  const std::size_t b = std::size_t(hi - series.dates.begin());
  PriceSeries out;
  out.label = series.label;
  out.dates.assign(series.dates.begin() + a, series.dates.begin() + b);
  out.values.assign(series.values.begin() + a, series.values.begin() + b);
  out.day_index.assign(series.day_index.begin() + a,
                       series.day_index.begin() + b);
  return out;
}

EventWindow window_stats(const PriceSeries& series, std::int64_t t1,
                         std::int64_t t2) {
  if (t1 >= t2) {
    throw BoundsError("window_stats: t1 " + std::to_string(t1) +
                      " must be < t2 " + std::to_string(t2));
  }
  const std::size_t a = series.position_of(t1);
  const std::size_t b = series.position_of(t2);
  double lo = series.values[a];
  double hi = series.values[a];
  for (std::size_t i = a; i <= b; ++i) {
    lo = std::min(lo, series.values[i]);
    hi = std::max(hi, series.values[i]);
  }
  if (!(lo < hi)) {
    throw DegenerateWindowError("window [" + std::to_string(t1) + ", " +
                                std::to_string(t2) +
                                "] has constant price " + format_value(lo));
  }
  return EventWindow{t1,
                     t2,
                     series.dates[a],
                     series.dates[b],
                     lo,
                     hi};
}

}  // namespace hsfkit
