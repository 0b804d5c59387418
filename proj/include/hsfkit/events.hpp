#pragma once

#include <cstddef>
#include <vector>

#include "hsfkit/price_series.hpp"

namespace hsfkit {

/// One cataloged pricing episode: the published window plus the published
/// fit statistics for cross-checking reproduction runs.
struct CatalogEntry {
  int event_id = 0;
  EventWindow window;            // published indices, dates and extrema
  double published_rms = 0.0;    // USD
  double published_rms_reduction = 0.0;  // percent
  char panel = '?';
};

struct EventCatalog {
  std::vector<CatalogEntry> entries;
};

/// The 14 built-in pricing episodes (2010-2021). Indices are sample
/// offsets from 2010-08-17; dates are authoritative when the two disagree
/// across data vendors.
const EventCatalog& catalog();

/// An event mapped onto the unit square: tau is fractional time inside the
/// window, nu fractional price between the window extrema.
struct NormalizedEvent {
  int event_id = 0;
  std::vector<double> tau;
  std::vector<double> nu;
};

/// Normalizes the samples inside [window.t1, window.t2]. Price extrema are
/// recomputed from the data so nu always attains both 0 and 1.
NormalizedEvent normalize(const PriceSeries& series, const EventWindow& window,
                          int event_id = 0);

/// Inverse of normalize for a known window: nu=0 maps to p_min, nu=1 to
/// p_max exactly.
double denormalize(double nu, const EventWindow& window);

struct AveragePoint {
  double tau = 0.0;
  double mean_nu = 0.0;
  double std_nu = 0.0;
};

/// Events resampled onto a uniform tau grid; pointwise mean and
/// population standard deviation.
std::vector<AveragePoint> average_curve(const std::vector<NormalizedEvent>& events,
                                        std::size_t grid_points);

struct Correlation {
  double r2 = 0.0;
  std::size_t n = 0;
};

/// Squared Pearson correlation of prices over the date intersection.
Correlation correlate(const PriceSeries& a, const PriceSeries& b);

}  // namespace hsfkit
