#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hsfkit {

/// Fixed default seed for the sampled synthetics; documented so reruns
/// are reproducible by default.
inline constexpr std::uint64_t kDefaultSeed = 20100817;

/// Everything a subcommand needs; the binary in tools/ only parses flags
/// into this struct so pipelines are scriptable and testable in-process.
struct RunConfig {
  std::string command;               // spectrum | benford | fit | overlay | correlate
  std::vector<std::string> inputs;   // price CSVs (correlate takes two)
  std::string column = "Open";
  std::string from_date;             // empty = unset, ISO date otherwise
  std::string to_date;
  long days = 0;                     // 0 = unset; window length from from_date
  std::string event_selector;        // "", "all", or an event number
  std::int64_t t1 = -1;              // explicit day_index window, -1 = unset
  std::int64_t t2 = -1;
  bool decline = false;
  std::string synthetic;             // sine | sine_step | sine_plus_sine | benford | loguniform
  double dz = 1.5;                   // step height for sine_step
  std::size_t synth_n = 0;           // 0 = kind-specific default
  std::uint64_t seed = kDefaultSeed;
  std::string output_dir;            // empty: $HSFKIT_OUTPUT_DIR, then "."
  bool paper_defaults = false;
  double threshold = 5.0;            // discontinuity detection threshold
  std::size_t window_len = 128;
  std::size_t hop = 16;
  bool refine = false;               // coarse-to-fine calibration pass
};

/// Runs one subcommand; returns the process exit code (0 success,
/// 2 input/validation error, 3 output I/O error). Error text goes to
/// stderr.
int run_command(const RunConfig& config);

}  // namespace hsfkit
