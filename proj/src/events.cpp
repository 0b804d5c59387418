#include "hsfkit/events.hpp"

#include <algorithm>
#include <cmath>

#include "hsfkit/errors.hpp"

namespace hsfkit {

namespace {

CatalogEntry entry(int id, std::int64_t t1, std::int64_t t2, double p_min,
                   double p_max, const char* date1, const char* date2,
                   double rms, double rms_red, char panel) {
  return CatalogEntry{
      id,
      EventWindow{t1, t2, parse_date(date1), parse_date(date2), p_min, p_max},
      rms, rms_red, panel};
}

EventCatalog build_catalog() {
  EventCatalog c;
  c.entries = {
      entry(1, 89, 186, 0, 1, "2010-11-13", "2011-02-18", 0.08, 85.07, 'a'),
      entry(2, 199, 261, 1, 4, "2011-03-03", "2011-05-04", 0.2, 87.32, 'b'),
      entry(3, 199, 299, 1, 35, "2011-03-03", "2011-06-11", 2.0, 76.34, 'c'),
      entry(4, 517, 699, 4, 13, "2012-01-15", "2012-07-15", 0.9, 86.02, 'd'),
      entry(5, 727, 937, 10, 229, "2012-08-12", "2013-03-10", 6.0, 85.30, 'e'),
      entry(6, 1017, 1174, 66, 1132, "2013-05-29", "2013-11-02", 28.0, 91.19,
            'f'),
      entry(7, 1917, 2099, 365, 705, "2015-11-15", "2016-05-15", 21.0, 95.17,
            'g'),
      entry(8, 2191, 2467, 596, 2953, "2016-08-15", "2017-05-18", 165.0, 86.78,
            'h'),
      entry(9, 2454, 2524, 1933, 4066, "2017-05-05", "2017-07-14", 421.0,
            84.60, 'i'),
      entry(10, 2191, 2647, 596, 17803, "2016-08-15", "2017-11-14", 1033.0,
            74.51, 'j'),
      entry(11, 2999, 3204, 3236, 11007, "2018-11-01", "2019-05-25", 1044.0,
            80.83, 'k'),
      entry(12, 3561, 3728, 9048, 19104, "2020-05-16", "2020-10-30", 1312.0,
            89.10, 'l'),
      entry(13, 3561, 3773, 9048, 40789, "2020-05-16", "2020-12-14", 2503.0,
            84.70, 'm'),
      entry(14, 3561, 3815, 9048, 57533, "2020-05-16", "2021-01-25", 5621.0,
            75.25, 'n'),
  };
  return c;
}

}  // namespace

const EventCatalog& catalog() {
  static const EventCatalog c = build_catalog();
  return c;
}

NormalizedEvent normalize(const PriceSeries& series, const EventWindow& window,
                          int event_id) {
  const std::size_t a = series.position_of(window.t1);
  const std::size_t b = series.position_of(window.t2);
  if (a >= b) {
    throw BoundsError("normalize: window selects fewer than 2 samples");
  }
  double p_min = series.values[a];
  double p_max = series.values[a];
  for (std::size_t i = a; i <= b; ++i) {
    p_min = std::min(p_min, series.values[i]);
    p_max = std::max(p_max, series.values[i]);
  }
  if (!(p_min < p_max)) {
    throw DegenerateWindowError("normalize: window price is constant");
  }
  NormalizedEvent out;
  out.event_id = event_id;
  out.tau.reserve(b - a + 1);
  out.nu.reserve(b - a + 1);
  const double t_span = double(window.t2 - window.t1);
  const double p_span = p_max - p_min;
  for (std::size_t i = a; i <= b; ++i) {
    out.tau.push_back(double(series.day_index[i] - window.t1) / t_span);
    out.nu.push_back((series.values[i] - p_min) / p_span);
  }
  return out;
}

double denormalize(double nu, const EventWindow& window) {
  if (nu == 0.0) return window.p_min;
  if (nu == 1.0) return window.p_max;
  return window.p_min + nu * (window.p_max - window.p_min);
}

std::vector<AveragePoint> average_curve(const std::vector<NormalizedEvent>& events,
                                        std::size_t grid_points) {
  if (events.size() < 2) {
    throw ParameterError("average_curve needs at least 2 events");
  }
  if (grid_points < 10) {
    throw ParameterError("average_curve needs at least 10 grid points");
  }

  const auto interp = [](const NormalizedEvent& ev, double tau) {
    const auto hi =
        std::lower_bound(ev.tau.begin(), ev.tau.end(), tau) - ev.tau.begin();
    if (hi <= 0) return ev.nu.front();
    if (std::size_t(hi) >= ev.tau.size()) return ev.nu.back();
    const std::size_t h = std::size_t(hi);
    const double t0 = ev.tau[h - 1];
    const double t1 = ev.tau[h];
    if (ev.tau[h] == tau) return ev.nu[h];
    const double alpha = (tau - t0) / (t1 - t0);
    return (1.0 - alpha) * ev.nu[h - 1] + alpha * ev.nu[h];
  };

  std::vector<AveragePoint> out(grid_points);
  std::vector<double> samples(events.size());
  for (std::size_t j = 0; j < grid_points; ++j) {
    const double tau = double(j) / double(grid_points - 1);
    for (std::size_t e = 0; e < events.size(); ++e) {
      samples[e] = interp(events[e], tau);
    }
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    if (*lo == *hi) {  // identical events stay exactly spread-free
      out[j] = AveragePoint{tau, *lo, 0.0};
      continue;
    }
    double mean = 0.0;
    for (const double s : samples) mean += s;
    mean /= double(samples.size());
    double var = 0.0;
    for (const double s : samples) var += (s - mean) * (s - mean);
    var /= double(samples.size());
    out[j] = AveragePoint{tau, mean, std::sqrt(var)};
  }
  return out;
}

Correlation correlate(const PriceSeries& a, const PriceSeries& b) {
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const long d = days_between(a.dates[i], b.dates[j]);
    if (d == 0) {
      xs.push_back(a.values[i]);
      ys.push_back(b.values[j]);
      ++i;
      ++j;
    } else if (d > 0) {
      ++i;
    } else {
      ++j;
    }
  }
  if (xs.size() < 10) {
    throw InsufficientOverlapError("date overlap has " +
                                   std::to_string(xs.size()) +
                                   " samples, needs >= 10");
  }
  const double n = double(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double dx = xs[k] - mx;
    const double dy = ys[k] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    throw DegenerateWindowError("correlate: zero variance in an input");
  }
  const double r = sxy / std::sqrt(sxx * syy);
  return Correlation{r * r, xs.size()};
}

}  // namespace hsfkit
