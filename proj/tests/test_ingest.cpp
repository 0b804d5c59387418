#include <string>
#include <vector>

#include "doctest.h"
#include "hsfkit/errors.hpp"
#include "hsfkit/price_series.hpp"

using namespace hsfkit;

namespace {

PriceSeries daily_series(const std::string& start, std::vector<double> values,
                         const std::string& label = "test") {
  PriceSeries s;
  s.label = label;
  const Date d0 = parse_date(start);
  for (std::size_t i = 0; i < values.size(); ++i) {
    s.dates.push_back(add_days(d0, long(i)));
    s.values.push_back(values[i]);
    s.day_index.push_back(std::int64_t(i));
  }
  return s;
}

const char* kThreeRows =
    "Date,Open,High,Low,Close,Adj Close,Volume\n"
    "2010-08-17,0.0649,0.0699,0.0649,0.0699,0\n"
    "2010-08-18,0.0799,0.0879,0.0764,0.0808,0\n"
    "2010-08-19,0.0867,0.0899,0.0824,0.0837,0\n";

}  // namespace

TEST_CASE("parse_price_csv reads rows in date order") {
  const auto parsed = parse_price_csv(kThreeRows);
  CHECK(parsed.series.size() == 3);
  CHECK(parsed.dropped_rows == 0);
  CHECK(parsed.series.values[0] == doctest::Approx(0.0649));
  CHECK(parsed.series.values[1] == doctest::Approx(0.0799));
  CHECK(parsed.series.values[2] == doctest::Approx(0.0867));
  CHECK(parsed.series.day_index == std::vector<std::int64_t>{0, 1, 2});
  CHECK(format_date(parsed.series.dates.front()) == "2010-08-17");
  CHECK(format_date(parsed.series.dates.back()) == "2010-08-19");
}

TEST_CASE("parse_price_csv honors the requested column") {
  const auto parsed = parse_price_csv(kThreeRows, "Close");
  CHECK(parsed.series.values[0] == doctest::Approx(0.0699));
  CHECK(parsed.series.values[2] == doctest::Approx(0.0837));
}

TEST_CASE("parse_price_csv sorts out-of-order rows") {
  const std::string csv =
      "Date,Open\n"
      "2020-01-03,3\n"
      "2020-01-01,1\n"
      "2020-01-02,2\n";
  const auto parsed = parse_price_csv(csv);
  CHECK(parsed.series.values == std::vector<double>{1, 2, 3});
}

TEST_CASE("parse_price_csv drops and counts null rows") {
  std::string csv = "Date,Open\n";
  for (int i = 0; i < 10; ++i) {
    const std::string day =
        format_date(add_days(parse_date("2020-01-01"), i));
    csv += day + (i == 4 ? ",null\n" : "," + std::to_string(i + 1) + "\n");
  }
  const auto parsed = parse_price_csv(csv);
  CHECK(parsed.series.size() == 9);
  CHECK(parsed.dropped_rows == 1);
}

TEST_CASE("parse_price_csv error taxonomy") {
  CHECK_THROWS_AS(parse_price_csv("Date,Open\n", "Open"), EmptyDataError);
  CHECK_THROWS_AS(parse_price_csv(kThreeRows, "Volume Weighted"), SchemaError);
  CHECK_THROWS_WITH_AS(
      parse_price_csv("Date,Close\n2020-01-01,1\n", "Open"),
      doctest::Contains("available columns: Date, Close"), SchemaError);
  const std::string dup =
      "Date,Open\n2020-01-01,1\n2020-01-01,2\n";
  CHECK_THROWS_WITH_AS(parse_price_csv(dup),
                       doctest::Contains("2020-01-01"), DuplicateDateError);
  CHECK_THROWS_AS(parse_price_csv("Date,Open\n2020-01-01,zero\n"),
                  SchemaError);
  CHECK_THROWS_AS(parse_price_csv("Date,Open\n2020-13-01,1\n"), SchemaError);
  CHECK_THROWS_AS(parse_price_csv("Date,Open\n01/02/2020,1\n"), SchemaError);
  CHECK_THROWS_AS(parse_price_csv("Date,Open\n2020-01-01,-2\n"), SchemaError);
}

TEST_CASE("csv round-trip preserves dates, values and label") {
  const auto parsed = parse_price_csv(kThreeRows, "Open", "btc");
  const std::string csv = to_csv(parsed.series);
  const auto again = parse_price_csv(csv, "value", "btc");
  CHECK(again.series.dates == parsed.series.dates);
  CHECK(again.series.values == parsed.series.values);
  CHECK(again.series.label == parsed.series.label);
}

TEST_CASE("slice keeps parent day_index and is idempotent") {
  const auto s = daily_series("2010-08-17", {1, 2, 3, 4, 5, 6, 7, 8});
  const Date a = parse_date("2010-08-19");
  const Date b = parse_date("2010-08-22");
  const auto cut = slice(s, a, b);
  CHECK(cut.size() == 4);
  CHECK(cut.day_index == std::vector<std::int64_t>{2, 3, 4, 5});
  const auto cut2 = slice(cut, a, b);
  CHECK(cut2.values == cut.values);
  CHECK(cut2.day_index == cut.day_index);

  const auto all = slice(s, s.dates.front(), s.dates.back());
  CHECK(all.values == s.values);
  CHECK(all.day_index == s.day_index);
}

TEST_CASE("slice over a trading gap synthesizes nothing") {
  PriceSeries s;
  s.label = "equity";
  // Friday, then Monday: weekend missing.
  s.dates = {parse_date("2020-01-03"), parse_date("2020-01-06"),
             parse_date("2020-01-07")};
  s.values = {10, 11, 12};
  s.day_index = {0, 1, 2};
  const auto cut = slice(s, parse_date("2020-01-03"), parse_date("2020-01-06"));
  CHECK(cut.size() == 2);
  CHECK(cut.values == std::vector<double>{10, 11});
}

TEST_CASE("slice error cases") {
  const auto s = daily_series("2020-01-01", {1, 2, 3});
  CHECK_THROWS_AS(slice(s, parse_date("2021-01-01"), parse_date("2021-02-01")),
                  EmptyWindowError);
  CHECK_THROWS_AS(slice(s, parse_date("2020-01-03"), parse_date("2020-01-01")),
                  ParameterError);
}

TEST_CASE("window_stats finds extrema over the index range") {
  const auto s = daily_series("2020-01-01", {5, 3, 9, 4, 7});
  const auto w = window_stats(s, 1, 3);
  CHECK(w.p_min == 3);
  CHECK(w.p_max == 9);
  CHECK(w.t1 == 1);
  CHECK(w.t2 == 3);
  CHECK(format_date(w.date1) == "2020-01-02");
  CHECK(format_date(w.date2) == "2020-01-04");
  CHECK(w.p_max - w.p_min >= 0);
  CHECK(w.p_max - w.p_min <= w.p_max);
}

TEST_CASE("window_stats error cases") {
  const auto s = daily_series("2020-01-01", {5, 3, 9, 4, 7});
  CHECK_THROWS_AS(window_stats(s, 3, 1), BoundsError);
  CHECK_THROWS_AS(window_stats(s, 0, 99), BoundsError);
  const auto flat = daily_series("2020-01-01", {2, 2, 2, 2});
  CHECK_THROWS_AS(window_stats(flat, 0, 3), DegenerateWindowError);
}

TEST_CASE("window_stats works against sliced day_index") {
  const auto s = daily_series("2020-01-01", {5, 3, 9, 4, 7, 1, 8});
  const auto cut = slice(s, parse_date("2020-01-03"), parse_date("2020-01-07"));
  const auto w = window_stats(cut, 2, 5);
  CHECK(w.p_min == 1);
  CHECK(w.p_max == 9);
}

TEST_CASE("validate rejects broken series") {
  auto s = daily_series("2020-01-01", {1, 2, 3});
  s.values[1] = -1;
  CHECK_THROWS_AS(s.validate(), SchemaError);
  auto s2 = daily_series("2020-01-01", {1, 2, 3});
  s2.dates[2] = s2.dates[0];
  CHECK_THROWS_AS(s2.validate(), SchemaError);
}
