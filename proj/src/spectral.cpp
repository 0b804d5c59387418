#include "hsfkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "hsfkit/errors.hpp"

namespace hsfkit {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * kPi / double(len);
    const std::complex<double> step(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= step;
      }
    }
  }
}

// Direct half-spectrum DFT for arbitrary N. The rotation accumulator is
// re-synchronized periodically to keep the phase error negligible.
std::vector<double> direct_half_power(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> power(n / 2 + 1, 0.0);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const double ang = -2.0 * kPi * double(k) / double(n);
    const std::complex<double> step(std::cos(ang), std::sin(ang));
    std::complex<double> rot(1.0, 0.0);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      if ((t & 255u) == 0u) {
        const double phase = ang * double(t);
        rot = {std::cos(phase), std::sin(phase)};
      }
      acc += x[t] * rot;
      rot *= step;
    }
    power[k] = std::norm(acc) / double(n);
  }
  return power;
}

}  // namespace

namespace detail {

std::vector<double> half_spectrum_power(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  if (is_power_of_two(n)) {
    std::vector<std::complex<double>> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = x[i];
    fft_radix2(a);
    std::vector<double> power(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) power[k] = std::norm(a[k]) / double(n);
    return power;
  }
  return direct_half_power(x);
}

}  // namespace detail

double Spectrogram::column_total(std::size_t c) const {
  double total = 0.0;
  for (const auto& row : power) total += row[c];
  return total;
}

SynthKind parse_synth_kind(const std::string& name) {
  if (name == "sine") return SynthKind::kSine;
  if (name == "sine_step") return SynthKind::kSineStep;
  if (name == "sine_plus_sine") return SynthKind::kSinePlusSine;
  throw ParameterError("unknown synthetic kind '" + name +
                       "' (expected sine, sine_step or sine_plus_sine)");
}

Periodogram periodogram(const PriceSeries& series) {
  const std::size_t n = series.size();
  if (n < 8) {
    throw LengthError("periodogram needs at least 8 samples, got " +
                      std::to_string(n));
  }
  const auto power = detail::half_spectrum_power(series.values);
  Periodogram out;
  out.frequencies.reserve(n / 2);
  out.power.reserve(n / 2);
  for (std::size_t k = 1; k <= n / 2; ++k) {
    out.frequencies.push_back(double(k) / double(n));
    out.power.push_back(power[k]);
  }
  return out;
}

Spectrogram spectrogram(const PriceSeries& series, std::size_t window_len,
                        std::size_t hop) {
  const std::size_t n = series.size();
  if (window_len < 8) {
    throw LengthError("spectrogram window must have at least 8 samples");
  }
  if (window_len > n) {
    throw LengthError("spectrogram window (" + std::to_string(window_len) +
                      ") longer than series (" + std::to_string(n) + ")");
  }
  if (hop < 1) {
    throw ParameterError("spectrogram hop must be >= 1");
  }

  std::vector<double> taper(window_len);
  for (std::size_t i = 0; i < window_len; ++i) {
    taper[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * double(i) / double(window_len));
  }

  Spectrogram out;
  out.frequencies.reserve(window_len / 2);
  for (std::size_t k = 1; k <= window_len / 2; ++k) {
    out.frequencies.push_back(double(k) / double(window_len));
  }
  out.power.assign(window_len / 2, {});

  std::vector<double> buf(window_len);
  for (std::size_t start = 0; start + window_len <= n; start += hop) {
    const double mean =
        std::accumulate(series.values.begin() + long(start),
                        series.values.begin() + long(start + window_len), 0.0) /
        double(window_len);
    for (std::size_t i = 0; i < window_len; ++i) {
      buf[i] = (series.values[start + i] - mean) * taper[i];
    }
    const auto power = detail::half_spectrum_power(buf);
    for (std::size_t k = 1; k <= window_len / 2; ++k) {
      out.power[k - 1].push_back(power[k]);
    }
    out.window_centers.push_back(series.day_index[start + window_len / 2]);
  }
  return out;
}

PriceSeries synth_signal(SynthKind kind, std::size_t n, double dz) {
  if (n < 1) {
    throw ParameterError("synth_signal needs n >= 1");
  }
  PriceSeries out;
  switch (kind) {
    case SynthKind::kSine: out.label = "synthetic:sine"; break;
    case SynthKind::kSineStep: out.label = "synthetic:sine_step"; break;
    case SynthKind::kSinePlusSine: out.label = "synthetic:sine_plus_sine"; break;
  }
  const Date epoch = parse_date("2000-01-01");
  out.dates.reserve(n);
  out.values.reserve(n);
  out.day_index.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = double(i);
    double v = 2.0 + std::sin(t / 30.0);
    if (kind == SynthKind::kSineStep && t > 1000.0) v += dz;
    if (kind == SynthKind::kSinePlusSine && t > 1000.0) {
      v += std::sin((t - 60.0) / 5.0);
    }
    out.dates.push_back(add_days(epoch, long(i)));
    out.values.push_back(v);
    out.day_index.push_back(std::int64_t(i));
  }
  out.validate();
  return out;
}

std::vector<std::int64_t> detect_discontinuities(const Spectrogram& spec,
                                                 double threshold) {
  if (spec.columns() == 0) {
    throw ParameterError("detect_discontinuities: empty spectrogram");
  }
  if (!(threshold > 1.0)) {
    throw ParameterError("detection threshold must be > 1");
  }
  const std::size_t n = spec.columns();
  std::vector<double> totals(n);
  for (std::size_t c = 0; c < n; ++c) totals[c] = spec.column_total(c);

  std::vector<double> sorted = totals;
  std::sort(sorted.begin(), sorted.end());
  const double median = (n % 2 == 1)
                            ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  // A flagged column is reported only when it is the peak of its run of
  // adjacent flagged columns; a left neighbor wins exact ties.
  std::vector<std::int64_t> detections;
  for (std::size_t c = 0; c < n; ++c) {
    if (!(totals[c] > threshold * median)) continue;
    if (c > 0 && totals[c - 1] >= totals[c]) continue;
    if (c + 1 < n && totals[c + 1] > totals[c]) continue;
    detections.push_back(spec.window_centers[c]);
  }
  return detections;
}

}  // namespace hsfkit
