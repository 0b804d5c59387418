#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hsfkit/dates.hpp"

namespace hsfkit {

/// A dated, strictly ordered sequence of daily prices for one asset.
///
/// `day_index` is the sample offset from the first sample of the *full*
/// dataset; slices keep their parent's indices. Missing calendar days are
/// never gap-filled, so for assets with trading holidays day_index counts
/// samples, not calendar days.
struct PriceSeries {
  std::string label;
  std::vector<Date> dates;
  std::vector<double> values;
  std::vector<std::int64_t> day_index;

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }

  /// Position of the sample with the given day_index; throws BoundsError
  /// when no sample carries that index.
  std::size_t position_of(std::int64_t index) const;

  /// Throws when a struct-level invariant is broken (unsorted dates,
  /// non-positive values, mismatched column lengths).
  void validate() const;
};

/// A [t1, t2] day_index range with the price extrema observed inside it.
struct EventWindow {
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  Date date1{};
  Date date2{};
  double p_min = 0.0;
  double p_max = 0.0;

  std::int64_t span_days() const { return t2 - t1; }
};

struct ParsedCsv {
  PriceSeries series;
  std::size_t dropped_rows = 0;  // rows with empty/"null" price
};

/// Parses a Yahoo-Finance-style CSV (header row with `Date` plus the
/// requested price column). Rows with empty or "null" prices are dropped
/// and counted; output is sorted by date; duplicate dates are an error.
ParsedCsv parse_price_csv(std::string_view csv_text,
                          const std::string& column = "Open",
                          const std::string& label = "series");

/// Serializes as `date,value` CSV (full precision, shortest round-trip).
std::string to_csv(const PriceSeries& series);

/// Inclusive date-range restriction; day_index values are preserved.
PriceSeries slice(const PriceSeries& series, const Date& from_date,
                  const Date& to_date);

/// Min/max stats over [t1, t2] (day_index endpoints must be samples).
EventWindow window_stats(const PriceSeries& series, std::int64_t t1,
                         std::int64_t t2);

}  // namespace hsfkit
