#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hsfkit/benford.hpp"
#include "hsfkit/events.hpp"
#include "hsfkit/hsf.hpp"
#include "hsfkit/spectral.hpp"

namespace hsfkit {

/// Shortest round-trip decimal form; used by every CSV writer so reruns
/// are byte-identical.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

/// One summary.csv line; failed events keep their row with a status note.
struct SummaryRow {
  std::string event;
  std::string date1;
  std::string date2;
  double price_change = 0.0;
  double rms = 0.0;
  double rms_reduction_pct = 0.0;
  bool ok = false;
  std::string status;  // "ok" or the failure reason
};

std::string render_periodogram_csv(const Periodogram& p);
std::string render_spectrogram_csv(const Spectrogram& s);
std::string render_detections_json(const Spectrogram& s, double threshold,
                                   const std::vector<std::int64_t>& centers);
std::string render_benford_json(const BenfordReport& r);
std::string render_benford_csv(const BenfordReport& r);
std::string render_fit_json(int event_id, const std::string& label,
                            const FitResult& fit);
std::string render_curve_csv(const PriceSeries& data, const FitResult& fit);
std::string render_summary_csv(const std::vector<SummaryRow>& rows);
std::string render_overlay_csv(const std::vector<NormalizedEvent>& events);
std::string render_average_curve_csv(const std::vector<AveragePoint>& points);
std::string render_catalog_json();
std::string render_correlation_json(const Correlation& c,
                                    const std::string& label_a,
                                    const std::string& label_b);

}  // namespace hsfkit
