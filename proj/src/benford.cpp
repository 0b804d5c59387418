#include "hsfkit/benford.hpp"

#include <cmath>
#include <cstdio>

#include "hsfkit/errors.hpp"

namespace hsfkit {

int first_digit(double value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw DomainError("first_digit requires a finite positive value");
  }
  // Scientific formatting gives the correctly rounded decimal mantissa,
  // avoiding drift from repeated multiplication by 10.
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15e", value);
  return buf[0] - '0';
}

double benford_expected(int digit) {
  if (digit < 1 || digit > 9) {
    throw DomainError("digit must be in 1..9, got " + std::to_string(digit));
  }
  return std::log10(1.0 + 1.0 / digit);
}

BenfordReport benford_test(const PriceSeries& series) {
  if (series.empty()) {
    throw EmptyDataError("benford_test: empty series");
  }
  BenfordReport report;
  for (const double v : series.values) {
    ++report.counts[std::size_t(first_digit(v) - 1)];
  }
  report.n_total = series.size();
  report.low_power = report.n_total < 50;
  const double n = static_cast<double>(report.n_total);
  for (int d = 1; d <= 9; ++d) {
    const std::size_t i = std::size_t(d - 1);
    report.expected[i] = benford_expected(d);
    const double expected_count = n * report.expected[i];
    const double diff = static_cast<double>(report.counts[i]) - expected_count;
    report.chi2 += diff * diff / expected_count;
    report.excess_pct[i] =
        100.0 * (static_cast<double>(report.counts[i]) / expected_count - 1.0);
  }
  return report;
}

}  // namespace hsfkit
