#include "hsfkit/hsf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hsfkit/errors.hpp"

namespace hsfkit {

namespace {

// Snap tolerance for "day lands exactly on a knot", in knot units.
constexpr double kKnotSnap = 1e-9;

std::size_t knots_for_span(std::int64_t span_days, double dt) {
  return std::size_t(std::ceil(double(span_days) / dt)) + 1;
}

// Log-knot evaluator shared by the public entry points and the
// calibration hot loop.
struct KnotCurve {
  const std::vector<double>& knots;
  const std::vector<double>& log_knots;
  std::int64_t anchor;
  double dt;

  double at(std::int64_t day) const {
    const double q = double(day - anchor) / dt;
    if (q < -kKnotSnap) {
      throw CoverageError("day " + std::to_string(day) +
                          " precedes the model anchor");
    }
    double k_floor = std::floor(q);
    double alpha = q - k_floor;
    if (alpha > 1.0 - kKnotSnap) {
      k_floor += 1.0;
      alpha = 0.0;
    }
    std::size_t k = k_floor < 0.0 ? 0 : std::size_t(k_floor);
    if (k >= knots.size()) {
      throw CoverageError("day " + std::to_string(day) +
                          " is past the last knot");
    }
    if (alpha < kKnotSnap) return knots[k];
    if (k + 1 >= knots.size()) {
      throw CoverageError("day " + std::to_string(day) +
                          " is past the last knot");
    }
    return std::exp((1.0 - alpha) * log_knots[k] + alpha * log_knots[k + 1]);
  }
};

struct WindowView {
  std::size_t first;  // position of t1
  std::size_t last;   // position of t2
  std::size_t count() const { return last - first + 1; }
};

WindowView resolve_window(const PriceSeries& data, const EventWindow& window) {
  const std::size_t a = data.position_of(window.t1);
  const std::size_t b = data.position_of(window.t2);
  if (a >= b) {
    throw BoundsError("window [" + std::to_string(window.t1) + ", " +
                      std::to_string(window.t2) + "] is empty");
  }
  return {a, b};
}

double window_baseline_rms(const PriceSeries& data, const WindowView& view) {
  double mean = 0.0;
  for (std::size_t i = view.first; i <= view.last; ++i) mean += data.values[i];
  mean /= double(view.count());
  double ssq = 0.0;
  for (std::size_t i = view.first; i <= view.last; ++i) {
    const double d = data.values[i] - mean;
    ssq += d * d;
  }
  return std::sqrt(ssq / double(view.count()));
}

struct Candidate {
  double rms = std::numeric_limits<double>::infinity();
  double dt = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;

  bool beats(const Candidate& other) const {
    if (rms != other.rms) return rms < other.rms;
    if (dt != other.dt) return dt < other.dt;
    if (p1 != other.p1) return p1 < other.p1;
    return p2 < other.p2;
  }
};

// Exhaustive scan. For one (dt, growth) pair the unit-seed curve is
// computed once; every p1 then scales it, since the recurrence and the
// log-linear interpolation both commute with a uniform price scale.
Candidate scan_grid(const PriceSeries& data, const EventWindow& window,
                    const WindowView& view, const CalibrationGrid& grid) {
  const std::int64_t span = window.t2 - window.t1;
  const std::size_t n_days = view.count();

  Candidate best;
  std::vector<double> base(n_days);
  for (const double dt : grid.dt) {
    if (!(dt > 0.0)) continue;
    const std::size_t n_knots = knots_for_span(span, dt);
    for (const double g : grid.growth) {
      const auto knots = generate(1.0, 1.0 + g, n_knots);
      std::vector<double> logs(knots.size());
      for (std::size_t i = 0; i < knots.size(); ++i) logs[i] = std::log(knots[i]);
      const KnotCurve curve{knots, logs, window.t1, dt};
      bool covered = true;
      for (std::size_t i = 0; i < n_days; ++i) {
        const std::int64_t day = data.day_index[view.first + i];
        try {
          base[i] = curve.at(day);
        } catch (const CoverageError&) {
          covered = false;
          break;
        }
      }
      if (!covered) continue;
      for (const double p1 : grid.p1) {
        if (!(p1 > 0.0)) continue;
        double ssq = 0.0;
        for (std::size_t i = 0; i < n_days; ++i) {
          const double diff = data.values[view.first + i] - p1 * base[i];
          ssq += diff * diff;
        }
        const Candidate cand{std::sqrt(ssq / double(n_days)), dt, p1,
                             p1 * (1.0 + g)};
        if (cand.beats(best)) best = cand;
      }
    }
  }
  return best;
}

// 9 values spaced at 1/5 of the local grid pitch around `center`;
// `log_scale` refines multiplicative axes in log space. The center value
// itself is always kept so refinement can never lose the coarse optimum.
std::vector<double> refined_axis(const std::vector<double>& axis, double center,
                                 bool log_scale) {
  std::vector<double> sorted(axis);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() < 2) return {center};

  // Pitch comes from the axis spacing around the grid point nearest the
  // optimum, so a center perturbed off-grid by rounding still refines at
  // the intended resolution.
  std::size_t nearest = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (std::abs(sorted[i] - center) < std::abs(sorted[nearest] - center)) {
      nearest = i;
    }
  }
  const auto gap = [&](double a, double b) {
    return log_scale ? std::log(b) - std::log(a) : b - a;
  };
  double pitch = 0.0;
  if (nearest > 0) pitch = gap(sorted[nearest - 1], sorted[nearest]);
  if (nearest + 1 < sorted.size()) {
    pitch = std::max(pitch, gap(sorted[nearest], sorted[nearest + 1]));
  }
  if (!(pitch > 0.0)) return {center};

  std::vector<double> out;
  for (int j = -4; j <= 4; ++j) {
    if (j == 0) {
      out.push_back(center);
      continue;
    }
    const double step = double(j) * pitch / 5.0;
    const double v =
        log_scale ? std::exp(std::log(center) + step) : center + step;
    if (v > 0.0) out.push_back(v);
  }
  return out;
}

FitResult finalize(const PriceSeries& data, const EventWindow& window,
                   const WindowView& view, const Candidate& best,
                   double baseline) {
  if (!std::isfinite(best.rms)) {
    throw CoverageError("no grid candidate covers the window");
  }
  const std::int64_t span = window.t2 - window.t1;
  HsfModel model{best.p1, best.p2, best.dt, window.t1,
                 knots_for_span(span, best.dt)};
  const auto knots = generate(model.p1, model.p2, model.n_knots);
  std::vector<double> logs(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) logs[i] = std::log(knots[i]);
  const KnotCurve curve{knots, logs, model.anchor_index, model.dt};

  FitResult fit;
  fit.model = model;
  fit.window = window;
  fit.modeled.label = data.label + ":hsf";
  const std::size_t n = view.count();
  fit.modeled.dates.reserve(n);
  fit.modeled.values.reserve(n);
  fit.modeled.day_index.reserve(n);
  fit.residuals.reserve(n);
  double ssq = 0.0;
  for (std::size_t i = view.first; i <= view.last; ++i) {
    const double m = curve.at(data.day_index[i]);
    fit.modeled.dates.push_back(data.dates[i]);
    fit.modeled.day_index.push_back(data.day_index[i]);
    fit.modeled.values.push_back(m);
    const double r = data.values[i] - m;
    fit.residuals.push_back(r);
    ssq += r * r;
  }
  fit.rms = std::sqrt(ssq / double(n));
  fit.rms_reduction_pct = 100.0 * (1.0 - fit.rms / baseline);
  return fit;
}

FitResult calibrate_core(const PriceSeries& data, const EventWindow& window,
                         const CalibrationGrid& grid, bool refine,
                         std::size_t min_samples) {
  if (grid.empty()) {
    throw ParameterError("calibration grid is empty");
  }
  const WindowView view = resolve_window(data, window);
  if (view.count() < min_samples) {
    throw ParameterError("calibration window has " +
                         std::to_string(view.count()) + " samples, needs >= " +
                         std::to_string(min_samples));
  }
  const double baseline = window_baseline_rms(data, view);
  if (!(baseline > 0.0)) {
    throw DegenerateBaselineError("window data is constant");
  }

  Candidate best = scan_grid(data, window, view, grid);
  if (refine && std::isfinite(best.rms)) {
    CalibrationGrid fine;
    fine.dt = refined_axis(grid.dt, best.dt, /*log_scale=*/false);
    fine.p1 = refined_axis(grid.p1, best.p1, /*log_scale=*/true);
    // growth is implied by (p1, p2); refine it around the winning ratio
    fine.growth = refined_axis(grid.growth, best.p2 / best.p1 - 1.0,
                               /*log_scale=*/true);
    const Candidate refined = scan_grid(data, window, view, fine);
    if (refined.beats(best)) best = refined;
  }
  return finalize(data, window, view, best, baseline);
}

}  // namespace

CalibrationGrid CalibrationGrid::defaults(const PriceSeries& data,
                                          const EventWindow& window) {
  const WindowView view = resolve_window(data, window);
  if (view.count() < 5) {
    throw ParameterError("window too short to derive a default grid");
  }
  double p_start = 0.0;
  for (std::size_t i = 0; i < 5; ++i) p_start += data.values[view.first + i];
  p_start /= 5.0;

  CalibrationGrid grid;
  const double lo = std::log(0.25 * p_start);
  const double hi = std::log(2.0 * p_start);
  grid.p1.reserve(40);
  for (int i = 0; i < 40; ++i) {
    grid.p1.push_back(std::exp(lo + double(i) * (hi - lo) / 39.0));
  }
  grid.growth = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1};
  // dt reaches far beyond the fast-surge scale: with the first knot pinned
  // at the window start, a long window's total growth is fixed by the knot
  // count, so slow episodes (2x over ~180 days) need steps near span/2.
  grid.dt.reserve(92);
  for (int i = 1; i <= 40; ++i) grid.dt.push_back(0.5 * double(i));  // 0.5..20
  for (int i = 21; i <= 48; ++i) grid.dt.push_back(double(i));       // 21..48
  for (int i = 25; i <= 48; ++i) grid.dt.push_back(2.0 * double(i)); // 50..96
  return grid;
}

std::vector<double> generate(double p1, double p2, std::size_t n) {
  if (n < 2) {
    throw ParameterError("generate needs at least 2 knots");
  }
  if (!(p1 > 0.0) || !(p2 > 0.0)) {
    throw ParameterError("seed values must be positive");
  }
  std::vector<double> out;
  out.reserve(n);
  out.push_back(p1);
  out.push_back(p2);
  for (std::size_t i = 2; i < n; ++i) {
    out.push_back(out[i - 1] + out[i - 2]);
  }
  return out;
}

double model_value_at(const HsfModel& model, std::int64_t day) {
  const auto knots = generate(model.p1, model.p2, model.n_knots);
  std::vector<double> logs(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) logs[i] = std::log(knots[i]);
  return KnotCurve{knots, logs, model.anchor_index, model.dt}.at(day);
}

PriceSeries resample_to_daily(const HsfModel& model, const EventWindow& window) {
  const double last_knot_time =
      double(model.anchor_index) + double(model.n_knots - 1) * model.dt;
  if (model.anchor_index > window.t1 ||
      last_knot_time < double(window.t2) - kKnotSnap) {
    throw CoverageError("knots do not cover [" + std::to_string(window.t1) +
                        ", " + std::to_string(window.t2) + "]");
  }
  const auto knots = generate(model.p1, model.p2, model.n_knots);
  std::vector<double> logs(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) logs[i] = std::log(knots[i]);
  const KnotCurve curve{knots, logs, model.anchor_index, model.dt};

  PriceSeries out;
  out.label = "hsf-model";
  const std::int64_t n = window.t2 - window.t1 + 1;
  out.dates.reserve(std::size_t(n));
  out.values.reserve(std::size_t(n));
  out.day_index.reserve(std::size_t(n));
  for (std::int64_t t = window.t1; t <= window.t2; ++t) {
    out.dates.push_back(add_days(window.date1, long(t - window.t1)));
    out.values.push_back(curve.at(t));
    out.day_index.push_back(t);
  }
  return out;
}

double rms(const PriceSeries& data, const PriceSeries& model) {
  if (data.size() != model.size() || data.empty()) {
    throw AlignmentError("rms: series lengths differ (" +
                         std::to_string(data.size()) + " vs " +
                         std::to_string(model.size()) + ")");
  }
  double ssq = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.day_index[i] != model.day_index[i]) {
      throw AlignmentError("rms: day_index mismatch at position " +
                           std::to_string(i));
    }
    const double d = data.values[i] - model.values[i];
    ssq += d * d;
  }
  return std::sqrt(ssq / double(data.size()));
}

double rms_reduction(const PriceSeries& window_data, double fit_rms) {
  if (window_data.empty()) {
    throw EmptyDataError("rms_reduction: empty window");
  }
  const WindowView view{0, window_data.size() - 1};
  const double baseline = window_baseline_rms(window_data, view);
  if (!(baseline > 0.0)) {
    throw DegenerateBaselineError("rms_reduction: window data is constant");
  }
  return 100.0 * (1.0 - fit_rms / baseline);
}

FitResult calibrate(const PriceSeries& data, const EventWindow& window,
                    const CalibrationGrid& grid, bool refine) {
  return calibrate_core(data, window, grid, refine, /*min_samples=*/20);
}

PriceSeries time_reverse(const PriceSeries& series) {
  PriceSeries out = series;
  std::reverse(out.values.begin(), out.values.end());
  return out;
}

FitResult fit_decline(const PriceSeries& data, const EventWindow& window,
                      const CalibrationGrid& grid, bool refine) {
  const WindowView view = resolve_window(data, window);
  if (view.count() < 5) {
    throw ParameterError("decline window has " + std::to_string(view.count()) +
                         " samples, needs >= 5");
  }
  if (!(data.values[view.last] < data.values[view.first])) {
    throw DirectionError("window is not declining (end price " +
                         std::to_string(data.values[view.last]) +
                         " >= start price " +
                         std::to_string(data.values[view.first]) + ")");
  }

  PriceSeries sub;
  sub.label = data.label;
  sub.dates.assign(data.dates.begin() + long(view.first),
                   data.dates.begin() + long(view.last) + 1);
  sub.values.assign(data.values.begin() + long(view.first),
                    data.values.begin() + long(view.last) + 1);
  sub.day_index.assign(data.day_index.begin() + long(view.first),
                       data.day_index.begin() + long(view.last) + 1);
  const PriceSeries reversed = time_reverse(sub);

  FitResult rising =
      calibrate_core(reversed, window, grid, refine, /*min_samples=*/5);

  // Map the rising fit back to forward time.
  FitResult fit;
  fit.model = rising.model;
  fit.window = window;
  fit.rms = rising.rms;
  fit.rms_reduction_pct = rising.rms_reduction_pct;
  fit.modeled.label = data.label + ":hsf-decline";
  const std::size_t n = rising.modeled.size();
  fit.modeled.dates = sub.dates;
  fit.modeled.day_index = sub.day_index;
  fit.modeled.values.resize(n);
  fit.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fit.modeled.values[i] = rising.modeled.values[n - 1 - i];
    fit.residuals[i] = sub.values[i] - fit.modeled.values[i];
  }
  return fit;
}

}  // namespace hsfkit
