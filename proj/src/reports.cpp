#include "hsfkit/reports.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hsfkit/errors.hpp"
#include "json.hpp"

namespace hsfkit {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open input file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out.write(content.data(), std::streamsize(content.size()));
  if (!out) {
    throw IoError("write failed for '" + path + "'");
  }
}

std::string render_periodogram_csv(const Periodogram& p) {
  std::string out = "frequency,power\n";
  for (std::size_t i = 0; i < p.frequencies.size(); ++i) {
    out += format_double(p.frequencies[i]);
    out += ',';
    out += format_double(p.power[i]);
    out += '\n';
  }
  return out;
}

std::string render_spectrogram_csv(const Spectrogram& s) {
  std::string out = "center_index,frequency,power\n";
  for (std::size_t c = 0; c < s.columns(); ++c) {
    for (std::size_t f = 0; f < s.rows(); ++f) {
      out += std::to_string(s.window_centers[c]);
      out += ',';
      out += format_double(s.frequencies[f]);
      out += ',';
      out += format_double(s.power[f][c]);
      out += '\n';
    }
  }
  return out;
}

std::string render_detections_json(const Spectrogram& s, double threshold,
                                   const std::vector<std::int64_t>& centers) {
  json j;
  j["threshold"] = threshold;
  j["window_columns"] = s.columns();
  j["detections"] = centers;
  return j.dump(2) + "\n";
}

std::string render_benford_json(const BenfordReport& r) {
  json j;
  j["n_total"] = r.n_total;
  j["counts"] = r.counts;
  j["expected"] = r.expected;
  j["excess_pct"] = r.excess_pct;
  j["chi2"] = r.chi2;
  j["dof"] = r.dof;
  j["low_power"] = r.low_power;
  return j.dump(2) + "\n";
}

std::string render_benford_csv(const BenfordReport& r) {
  std::string out = "digit,observed_prop,expected_prop\n";
  for (int d = 1; d <= 9; ++d) {
    const std::size_t i = std::size_t(d - 1);
    out += std::to_string(d);
    out += ',';
    out += format_double(double(r.counts[i]) / double(r.n_total));
    out += ',';
    out += format_double(r.expected[i]);
    out += '\n';
  }
  return out;
}

std::string render_fit_json(int event_id, const std::string& label,
                            const FitResult& fit) {
  json j;
  j["event_id"] = event_id;
  j["label"] = label;
  j["p1"] = fit.model.p1;
  j["p2"] = fit.model.p2;
  j["dt"] = fit.model.dt;
  j["anchor_index"] = fit.model.anchor_index;
  j["n_knots"] = fit.model.n_knots;
  j["rms_usd"] = fit.rms;
  j["rms_reduction_pct"] = fit.rms_reduction_pct;
  j["window"] = {
      {"t1", fit.window.t1},
      {"t2", fit.window.t2},
      {"date1", format_date(fit.window.date1)},
      {"date2", format_date(fit.window.date2)},
      {"p_min", fit.window.p_min},
      {"p_max", fit.window.p_max},
  };
  return j.dump(2) + "\n";
}

std::string render_curve_csv(const PriceSeries& data, const FitResult& fit) {
  std::string out = "date,observed,modeled,residual\n";
  for (std::size_t i = 0; i < fit.modeled.size(); ++i) {
    const std::size_t pos = data.position_of(fit.modeled.day_index[i]);
    out += format_date(fit.modeled.dates[i]);
    out += ',';
    out += format_double(data.values[pos]);
    out += ',';
    out += format_double(fit.modeled.values[i]);
    out += ',';
    out += format_double(fit.residuals[i]);
    out += '\n';
  }
  return out;
}

std::string render_summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "event,date1,date2,price_change,rms_usd,rms_reduction_pct,status\n";
  for (const auto& r : rows) {
    out += r.event;
    out += ',';
    out += r.date1;
    out += ',';
    out += r.date2;
    out += ',';
    if (r.ok) {
      out += format_double(r.price_change);
      out += ',';
      out += format_double(r.rms);
      out += ',';
      out += format_double(r.rms_reduction_pct);
      out += ",ok\n";
    } else {
      std::string status = r.status;
      for (char& ch : status) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      out += ",,," + status + "\n";
    }
  }
  return out;
}

std::string render_overlay_csv(const std::vector<NormalizedEvent>& events) {
  std::string out = "event_id,tau,nu\n";
  for (const auto& ev : events) {
    for (std::size_t i = 0; i < ev.tau.size(); ++i) {
      out += std::to_string(ev.event_id);
      out += ',';
      out += format_double(ev.tau[i]);
      out += ',';
      out += format_double(ev.nu[i]);
      out += '\n';
    }
  }
  return out;
}

std::string render_average_curve_csv(const std::vector<AveragePoint>& points) {
  std::string out = "tau,mean,std\n";
  for (const auto& p : points) {
    out += format_double(p.tau);
    out += ',';
    out += format_double(p.mean_nu);
    out += ',';
    out += format_double(p.std_nu);
    out += '\n';
  }
  return out;
}

std::string render_catalog_json() {
  json events = json::array();
  for (const auto& e : catalog().entries) {
    events.push_back({
        {"event_id", e.event_id},
        {"t1", e.window.t1},
        {"t2", e.window.t2},
        {"p_min", e.window.p_min},
        {"p_max", e.window.p_max},
        {"price_change", e.window.p_max - e.window.p_min},
        {"date1", format_date(e.window.date1)},
        {"date2", format_date(e.window.date2)},
        {"rms_usd", e.published_rms},
        {"rms_reduction_pct", e.published_rms_reduction},
        {"panel", std::string(1, e.panel)},
    });
  }
  json j;
  j["events"] = events;
  return j.dump(2) + "\n";
}

std::string render_correlation_json(const Correlation& c,
                                    const std::string& label_a,
                                    const std::string& label_b) {
  json j;
  j["r2"] = c.r2;
  j["n"] = c.n;
  j["series_a"] = label_a;
  j["series_b"] = label_b;
  return j.dump(2) + "\n";
}

}  // namespace hsfkit
