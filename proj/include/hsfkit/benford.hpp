#pragma once

#include <array>
#include <cstdint>

#include "hsfkit/price_series.hpp"

namespace hsfkit {

/// First-significant-digit tally of a price series against Benford's law,
/// with the Pearson chi-square conformity statistic (8 degrees of freedom).
struct BenfordReport {
  std::array<std::uint64_t, 9> counts{};  // observed, digits 1..9
  std::uint64_t n_total = 0;
  std::array<double, 9> expected{};  // Benford proportions, digits 1..9
  double chi2 = 0.0;
  int dof = 8;
  std::array<double, 9> excess_pct{};  // 100*(observed/expected - 1)
  bool low_power = false;              // fewer than 50 samples
};

/// Leading significant decimal digit, scale-free: 0.0649 -> 6, 649 -> 6.
int first_digit(double value);

/// Benford proportion log10(1 + 1/digit) for digit in 1..9.
double benford_expected(int digit);

BenfordReport benford_test(const PriceSeries& series);

}  // namespace hsfkit
