#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hsfkit/price_series.hpp"

namespace hsfkit {

/// One-sided power spectrum |DFT_k|^2 / N for k = 1..floor(N/2).
/// The DC bin is excluded; frequencies are cycles per sample in (0, 0.5].
struct Periodogram {
  std::vector<double> frequencies;
  std::vector<double> power;
};

/// Sliding-window power spectra. power[f][c] is the power of frequency row
/// f in window column c; window_centers holds the mid-window day_index.
struct Spectrogram {
  std::vector<std::int64_t> window_centers;
  std::vector<double> frequencies;
  std::vector<std::vector<double>> power;

  std::size_t columns() const { return window_centers.size(); }
  std::size_t rows() const { return frequencies.size(); }
  double column_total(std::size_t c) const;
};

enum class SynthKind { kSine, kSineStep, kSinePlusSine };

SynthKind parse_synth_kind(const std::string& name);

/// Whole-series periodogram of the raw values: no detrending, no taper.
Periodogram periodogram(const PriceSeries& series);

/// Short-time spectra: each window is mean-removed, Hann-tapered, then
/// transformed. Mean removal keeps a level shift from masking the
/// transient broadband stripe that marks a discontinuity.
Spectrogram spectrogram(const PriceSeries& series, std::size_t window_len = 128,
                        std::size_t hop = 16);

/// Reference signals: sine is 2 + sin(t/30); sine_step adds dz for
/// t > 1000; sine_plus_sine adds sin((t-60)/5) for t > 1000. The +2
/// offset keeps values positive.
PriceSeries synth_signal(SynthKind kind, std::size_t n, double dz = 1.5);

/// Window centers whose column total power exceeds threshold x median
/// column total. Runs of adjacent flagged columns are merged: only the
/// locally maximal column of each run is reported, which keeps the result
/// a monotone (shrinking) set as the threshold grows.
std::vector<std::int64_t> detect_discontinuities(const Spectrogram& spec,
                                                 double threshold);

namespace detail {
/// |DFT_k|^2 / N for k = 0..floor(N/2) (index 0 = DC).
std::vector<double> half_spectrum_power(const std::vector<double>& x);
}  // namespace detail

}  // namespace hsfkit
