#include "hsfkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "hsfkit/benford.hpp"
#include "hsfkit/errors.hpp"
#include "hsfkit/events.hpp"
#include "hsfkit/hsf.hpp"
#include "hsfkit/reports.hpp"
#include "hsfkit/spectral.hpp"

namespace hsfkit {

namespace {

namespace fs = std::filesystem;

// splitmix64: tiny, portable, and stable across platforms, which keeps
// seeded outputs byte-identical everywhere.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
};

std::string label_from_path(const std::string& path) {
  return fs::path(path).stem().string();
}

PriceSeries synth_benford_exact(std::size_t n) {
  PriceSeries out;
  out.label = "synthetic:benford";
  const Date epoch = parse_date("2000-01-01");
  std::size_t i = 0;
  for (int d = 1; d <= 9; ++d) {
    const auto count =
        std::size_t(std::llround(double(n) * benford_expected(d)));
    for (std::size_t k = 0; k < count; ++k, ++i) {
      out.dates.push_back(add_days(epoch, long(i)));
      out.values.push_back(double(d));
      out.day_index.push_back(std::int64_t(i));
    }
  }
  return out;
}

PriceSeries synth_loguniform(std::size_t n, std::uint64_t seed) {
  PriceSeries out;
  out.label = "synthetic:loguniform";
  const Date epoch = parse_date("2000-01-01");
  SplitMix64 rng{seed};
  for (std::size_t i = 0; i < n; ++i) {
    out.dates.push_back(add_days(epoch, long(i)));
    out.values.push_back(std::pow(10.0, 4.0 * rng.uniform()));
    out.day_index.push_back(std::int64_t(i));
  }
  return out;
}

PriceSeries make_synthetic(const RunConfig& cfg) {
  if (cfg.synthetic == "benford") {
    return synth_benford_exact(cfg.synth_n ? cfg.synth_n : 10000);
  }
  if (cfg.synthetic == "loguniform") {
    return synth_loguniform(cfg.synth_n ? cfg.synth_n : 10000, cfg.seed);
  }
  return synth_signal(parse_synth_kind(cfg.synthetic),
                      cfg.synth_n ? cfg.synth_n : 2048, cfg.dz);
}

PriceSeries load_series(const RunConfig& cfg, const std::string& path) {
  const std::string text = read_text_file(path);
  auto parsed = parse_price_csv(text, cfg.column, label_from_path(path));
  if (parsed.dropped_rows > 0) {
    std::cerr << "hsfkit: dropped " << parsed.dropped_rows
              << " row(s) with empty/null " << cfg.column << " in " << path
              << "\n";
  }
  return std::move(parsed.series);
}

PriceSeries apply_window(const RunConfig& cfg, PriceSeries series) {
  if (cfg.from_date.empty() && cfg.to_date.empty()) return series;
  const Date from = cfg.from_date.empty() ? series.dates.front()
                                          : parse_date(cfg.from_date);
  Date to = cfg.to_date.empty() ? series.dates.back() : parse_date(cfg.to_date);
  if (cfg.days > 0) to = add_days(from, cfg.days - 1);
  return slice(series, from, to);
}

PriceSeries resolve_input(const RunConfig& cfg) {
  PriceSeries series;
  if (!cfg.synthetic.empty()) {
    series = make_synthetic(cfg);
  } else {
    if (cfg.inputs.empty()) {
      throw ParameterError("no --input file and no --synthetic kind given");
    }
    series = load_series(cfg, cfg.inputs.front());
  }
  return apply_window(cfg, std::move(series));
}

fs::path prepare_output_dir(const RunConfig& cfg) {
  std::string dir = cfg.output_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("HSFKIT_OUTPUT_DIR")) dir = env;
  }
  if (dir.empty()) dir = ".";
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + dir + "': " +
                  ec.message());
  }
  return fs::path(dir);
}

/// Resolves a catalog window against the loaded data. Published dates win
/// over published indices (indices drift across data vendors); extrema
/// are recomputed from the data.
EventWindow resolve_catalog_window(const PriceSeries& data,
                                   const CatalogEntry& entry) {
  const PriceSeries in_window =
      slice(data, entry.window.date1, entry.window.date2);
  return window_stats(data, in_window.day_index.front(),
                      in_window.day_index.back());
}

/// Largest peak-to-trough move inside [from, to]: the window from the
/// running maximum to the subsequent minimum.
EventWindow max_drawdown_window(const PriceSeries& data) {
  std::size_t peak = 0;
  std::size_t best_peak = 0;
  std::size_t best_trough = 0;
  double best_drop = 0.0;
  for (std::size_t i = 1; i < data.size(); ++i) {
    if (data.values[i] > data.values[peak]) {
      peak = i;
      continue;
    }
    const double drop = data.values[peak] - data.values[i];
    if (drop > best_drop) {
      best_drop = drop;
      best_peak = peak;
      best_trough = i;
    }
  }
  if (best_drop <= 0.0) {
    throw DirectionError("no price decline found in the requested range");
  }
  return window_stats(data, data.day_index[best_peak],
                      data.day_index[best_trough]);
}

struct FitJob {
  int event_id = 0;       // catalog id; 0 = ad-hoc window; negative = decline
  std::string label;
  EventWindow window;
  bool has_window = false;
  std::string error;      // window resolution failure
};

std::vector<FitJob> plan_fit_jobs(const RunConfig& cfg,
                                  const PriceSeries& data) {
  std::vector<FitJob> jobs;
  if (cfg.decline) {
    FitJob job;
    job.event_id = -1;
    job.label = "decline1";
    job.window = (cfg.t1 >= 0 && cfg.t2 >= 0)
                     ? window_stats(data, cfg.t1, cfg.t2)
                     : max_drawdown_window(data);
    job.has_window = true;
    jobs.push_back(job);
    return jobs;
  }
  if (cfg.t1 >= 0 || cfg.t2 >= 0) {
    if (cfg.t1 < 0 || cfg.t2 < 0) {
      throw ParameterError("--t1 and --t2 must be given together");
    }
    FitJob job;
    job.event_id = 0;
    job.label = "custom";
    job.window = window_stats(data, cfg.t1, cfg.t2);
    job.has_window = true;
    jobs.push_back(job);
    return jobs;
  }

  const std::string selector =
      cfg.event_selector.empty() ? "all" : cfg.event_selector;
  for (const auto& entry : catalog().entries) {
    if (selector != "all" && std::to_string(entry.event_id) != selector) {
      continue;
    }
    FitJob job;
    job.event_id = entry.event_id;
    job.label = std::to_string(entry.event_id);
    try {
      job.window = resolve_catalog_window(data, entry);
      job.has_window = true;
    } catch (const Error& e) {
      job.error = e.what();
    }
    jobs.push_back(job);
  }
  if (jobs.empty()) {
    throw ParameterError("unknown event selector '" + selector + "'");
  }
  return jobs;
}

int cmd_spectrum(const RunConfig& cfg) {
  const fs::path out_dir = prepare_output_dir(cfg);
  const PriceSeries series = resolve_input(cfg);
  const Periodogram p = periodogram(series);
  const Spectrogram s = spectrogram(series, cfg.window_len, cfg.hop);
  const auto detections = detect_discontinuities(s, cfg.threshold);
  write_text_file((out_dir / "periodogram.csv").string(),
                  render_periodogram_csv(p));
  write_text_file((out_dir / "spectrogram.csv").string(),
                  render_spectrogram_csv(s));
  write_text_file((out_dir / "detections.json").string(),
                  render_detections_json(s, cfg.threshold, detections));
  return 0;
}

int cmd_benford(const RunConfig& cfg) {
  const fs::path out_dir = prepare_output_dir(cfg);
  const PriceSeries series = resolve_input(cfg);
  const BenfordReport report = benford_test(series);
  write_text_file((out_dir / "benford.json").string(),
                  render_benford_json(report));
  write_text_file((out_dir / "benford.csv").string(),
                  render_benford_csv(report));
  return 0;
}

int cmd_fit(const RunConfig& cfg) {
  const fs::path out_dir = prepare_output_dir(cfg);
  const PriceSeries data = resolve_input(cfg);
  const auto jobs = plan_fit_jobs(cfg, data);

  std::vector<SummaryRow> rows;
  std::size_t successes = 0;
  for (const auto& job : jobs) {
    SummaryRow row;
    row.event = job.label;
    if (!job.has_window) {
      row.status = job.error;
      rows.push_back(row);
      continue;
    }
    row.date1 = format_date(job.window.date1);
    row.date2 = format_date(job.window.date2);
    try {
      const CalibrationGrid grid = CalibrationGrid::defaults(data, job.window);
      const FitResult fit =
          cfg.decline ? fit_decline(data, job.window, grid, cfg.refine)
                      : calibrate(data, job.window, grid, cfg.refine);
      row.price_change = job.window.p_max - job.window.p_min;
      row.rms = fit.rms;
      row.rms_reduction_pct = fit.rms_reduction_pct;
      row.ok = true;
      row.status = "ok";
      ++successes;
      write_text_file(
          (out_dir / ("fit_" + job.label + ".json")).string(),
          render_fit_json(job.event_id, job.label, fit));
      write_text_file((out_dir / ("curve_" + job.label + ".csv")).string(),
                      render_curve_csv(data, fit));
    } catch (const Error& e) {
      row.status = e.what();
    }
    rows.push_back(row);
  }
  write_text_file((out_dir / "summary.csv").string(), render_summary_csv(rows));
  return successes > 0 ? 0 : 2;
}

int cmd_overlay(const RunConfig& cfg) {
  const fs::path out_dir = prepare_output_dir(cfg);
  const PriceSeries data = resolve_input(cfg);

  std::vector<NormalizedEvent> events;
  const std::string selector =
      cfg.event_selector.empty() ? "all" : cfg.event_selector;
  for (const auto& entry : catalog().entries) {
    if (selector != "all" && std::to_string(entry.event_id) != selector) {
      continue;
    }
    try {
      const EventWindow window = resolve_catalog_window(data, entry);
      events.push_back(normalize(data, window, entry.event_id));
    } catch (const Error& e) {
      std::cerr << "hsfkit: skipping event " << entry.event_id << ": "
                << e.what() << "\n";
    }
  }
  const auto average = average_curve(events, 101);
  write_text_file((out_dir / "overlay.csv").string(),
                  render_overlay_csv(events));
  write_text_file((out_dir / "average_curve.csv").string(),
                  render_average_curve_csv(average));
  write_text_file((out_dir / "catalog.json").string(), render_catalog_json());
  return 0;
}

int cmd_correlate(const RunConfig& cfg) {
  const fs::path out_dir = prepare_output_dir(cfg);
  if (cfg.inputs.size() != 2) {
    throw ParameterError("correlate needs exactly two --input files");
  }
  PriceSeries a = load_series(cfg, cfg.inputs[0]);
  PriceSeries b = load_series(cfg, cfg.inputs[1]);
  if (!cfg.from_date.empty() || !cfg.to_date.empty()) {
    a = apply_window(cfg, std::move(a));
    b = apply_window(cfg, std::move(b));
  } else if (cfg.days > 0) {
    // Bare --days N: the last N days of the common range.
    const Date end = std::min(a.dates.back(), b.dates.back(),
                              [](const Date& x, const Date& y) {
                                return days_between(y, x) < 0;
                              });
    const Date start = add_days(end, -(cfg.days - 1));
    a = slice(a, start, end);
    b = slice(b, start, end);
  }
  const Correlation c = correlate(a, b);
  write_text_file((out_dir / "correlation.json").string(),
                  render_correlation_json(c, a.label, b.label));
  return 0;
}

}  // namespace

int run_command(const RunConfig& config) {
  try {
    RunConfig cfg = config;
    if (cfg.paper_defaults) {
      cfg.window_len = 128;
      cfg.hop = 16;
      cfg.threshold = 5.0;
      cfg.refine = false;
    }
    if (cfg.command == "spectrum") return cmd_spectrum(cfg);
    if (cfg.command == "benford") return cmd_benford(cfg);
    if (cfg.command == "fit") return cmd_fit(cfg);
    if (cfg.command == "overlay") return cmd_overlay(cfg);
    if (cfg.command == "correlate") return cmd_correlate(cfg);
    throw ParameterError("unknown command '" + cfg.command + "'");
  } catch (const IoError& e) {
    std::cerr << "hsfkit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "hsfkit: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace hsfkit
