#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hsfkit/price_series.hpp"

namespace hsfkit {

/// Hockey-stick model: a two-seed additive recurrence (each knot the sum
/// of the previous two) whose knots sit every `dt` days starting at
/// `anchor_index`, interpolated log-linearly to the daily grid.
struct HsfModel {
  double p1 = 0.0;
  double p2 = 0.0;
  double dt = 1.0;  // days per recurrence step
  std::int64_t anchor_index = 0;
  std::size_t n_knots = 2;
};

struct FitResult {
  HsfModel model;
  PriceSeries modeled;            // model sampled at the window's days
  std::vector<double> residuals;  // data - model, per day, USD
  double rms = 0.0;               // USD
  double rms_reduction_pct = 0.0;
  EventWindow window;
};

/// Brute-force search space. Candidate seeds are (p1, p1*(1+g)) for every
/// p1 and growth g; dt is in days.
struct CalibrationGrid {
  std::vector<double> p1;
  std::vector<double> growth;
  std::vector<double> dt;

  bool empty() const { return p1.empty() || growth.empty() || dt.empty(); }
  std::size_t size() const { return p1.size() * growth.size() * dt.size(); }

  /// The documented default search space: dt 0.5..20 in 0.5-day steps,
  /// 40 log-spaced p1 around the window's opening price level, growth
  /// ratios 0.1%..10%.
  static CalibrationGrid defaults(const PriceSeries& data,
                                  const EventWindow& window);
};

/// [p1, p2, p1+p2, ...]: each term the sum of the previous two.
std::vector<double> generate(double p1, double p2, std::size_t n);

/// Model value at an integer day; knots must cover the day.
double model_value_at(const HsfModel& model, std::int64_t day);

/// Daily curve over [t1, t2] by log-linear interpolation between knots.
/// A day landing exactly on a knot takes the knot value.
PriceSeries resample_to_daily(const HsfModel& model, const EventWindow& window);

/// Root-mean-square distance in USD between two aligned series.
double rms(const PriceSeries& data, const PriceSeries& model);

/// Percent improvement of `fit_rms` over the constant-mean baseline: the
/// RMS deviation of the window data about its own mean.
double rms_reduction(const PriceSeries& window_data, double fit_rms);

/// Exhaustive minimum-RMS search over the grid, anchored at window.t1.
/// Ties break deterministically by lowest rms, then smallest dt, p1, p2.
/// When `refine` is set, one extra pass at 1/5 grid pitch runs around the
/// coarse optimum (the coarse optimum itself stays in the candidate set).
FitResult calibrate(const PriceSeries& data, const EventWindow& window,
                    const CalibrationGrid& grid, bool refine = false);

/// Values reversed on the same date/day_index grid.
PriceSeries time_reverse(const PriceSeries& series);

/// Fits a decline: calibrates a rising model on the time-reversed window
/// and maps the fit back to forward time (monotone-decreasing curve).
FitResult fit_decline(const PriceSeries& data, const EventWindow& window,
                      const CalibrationGrid& grid, bool refine = false);

}  // namespace hsfkit
