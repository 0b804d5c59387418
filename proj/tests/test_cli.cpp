#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hsfkit/cli.hpp"
#include "hsfkit/hsf.hpp"
#include "hsfkit/price_series.hpp"
#include "hsfkit/reports.hpp"
#include "json.hpp"

using namespace hsfkit;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hsfkit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string file_bytes(const fs::path& p) { return read_text_file(p.string()); }

int run_binary(const std::string& args) {
  const std::string cmd =
      std::string(HSFKIT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

// A positive wiggly series spanning the full catalog date range, used
// where commands must resolve published event windows.
fs::path write_full_range_csv(const fs::path& dir) {
  PriceSeries s;
  s.label = "fake";
  const Date d0 = parse_date("2010-08-17");
  const long n = days_between(d0, parse_date("2021-06-27")) + 1;
  for (long i = 0; i < n; ++i) {
    s.dates.push_back(add_days(d0, i));
    s.values.push_back(3.0 + 0.001 * double(i) +
                       std::sin(double(i) / 50.0) +
                       0.5 * std::sin(double(i) / 7.0));
    s.day_index.push_back(i);
  }
  const fs::path file = dir / "fake_full.csv";
  write_text_file(file.string(), to_csv(s));
  return file;
}

fs::path write_hsf_event_csv(const fs::path& dir) {
  const HsfModel truth{200.0, 210.0, 5.0, 0, 19};
  const EventWindow cover{0, 90, parse_date("2020-01-01"),
                          add_days(parse_date("2020-01-01"), 90), 1.0, 1e9};
  const auto data = resample_to_daily(truth, cover);
  const fs::path file = dir / "event.csv";
  write_text_file(file.string(), to_csv(data));
  return file;
}

}  // namespace

TEST_CASE("spectrum on a synthetic writes the three report files") {
  const fs::path dir = fresh_dir("spectrum");
  RunConfig cfg;
  cfg.command = "spectrum";
  cfg.synthetic = "sine";
  cfg.output_dir = dir.string();
  CHECK(run_command(cfg) == 0);
  CHECK(fs::exists(dir / "periodogram.csv"));
  CHECK(fs::exists(dir / "spectrogram.csv"));
  CHECK(fs::exists(dir / "detections.json"));
  const std::string head =
      file_bytes(dir / "periodogram.csv").substr(0, 16);
  CHECK(head == "frequency,power\n");
}

TEST_CASE("spectrum reruns are byte-identical") {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  for (const auto& dir : {a, b}) {
    RunConfig cfg;
    cfg.command = "spectrum";
    cfg.synthetic = "sine_step";
    cfg.output_dir = dir.string();
    REQUIRE(run_command(cfg) == 0);
  }
  for (const char* name :
       {"periodogram.csv", "spectrogram.csv", "detections.json"}) {
    CHECK(file_bytes(a / name) == file_bytes(b / name));
  }
}

TEST_CASE("benford subcommand reports on synthetics") {
  const fs::path dir = fresh_dir("benford");
  RunConfig cfg;
  cfg.command = "benford";
  cfg.synthetic = "benford";
  cfg.output_dir = dir.string();
  REQUIRE(run_command(cfg) == 0);
  const auto j = nlohmann::json::parse(file_bytes(dir / "benford.json"));
  CHECK(j["chi2"].get<double>() < 1.0);
  CHECK(j["dof"].get<int>() == 8);
  CHECK(j["n_total"].get<std::size_t>() == 10000);

  // seeded log-uniform sampling is Benford-conformant and reproducible
  RunConfig lu = cfg;
  lu.synthetic = "loguniform";
  const fs::path dir2 = fresh_dir("benford_lu");
  lu.output_dir = dir2.string();
  REQUIRE(run_command(lu) == 0);
  const auto j2 = nlohmann::json::parse(file_bytes(dir2 / "benford.json"));
  CHECK(j2["chi2"].get<double>() < 15.51);

  const fs::path dir3 = fresh_dir("benford_lu2");
  lu.output_dir = dir3.string();
  REQUIRE(run_command(lu) == 0);
  CHECK(file_bytes(dir2 / "benford.json") == file_bytes(dir3 / "benford.json"));
}

TEST_CASE("fit on an explicit window recovers the generating model") {
  const fs::path dir = fresh_dir("fit");
  const fs::path input = write_hsf_event_csv(dir);
  RunConfig cfg;
  cfg.command = "fit";
  cfg.inputs = {input.string()};
  cfg.column = "value";
  cfg.t1 = 0;
  cfg.t2 = 90;
  cfg.output_dir = (dir / "out").string();
  REQUIRE(run_command(cfg) == 0);
  CHECK(fs::exists(dir / "out" / "fit_custom.json"));
  CHECK(fs::exists(dir / "out" / "curve_custom.csv"));
  const auto j =
      nlohmann::json::parse(file_bytes(dir / "out" / "fit_custom.json"));
  CHECK(j["rms_reduction_pct"].get<double>() > 99.0);
  CHECK(j["dt"].get<double>() > 0.0);
  CHECK(j["window"]["t1"].get<long>() == 0);
  CHECK(j["window"]["t2"].get<long>() == 90);

  const std::string summary = file_bytes(dir / "out" / "summary.csv");
  CHECK(summary.find("custom") != std::string::npos);
  CHECK(summary.find(",ok") != std::string::npos);
}

TEST_CASE("fit --decline finds and fits the largest drawdown") {
  const fs::path dir = fresh_dir("decline");
  // a rise, then a sharp 40-day decline, then flat
  PriceSeries s;
  const Date d0 = parse_date("2021-01-01");
  for (long i = 0; i < 200; ++i) {
    double v = 100.0 + double(i);
    if (i >= 120) v = 220.0 - 4.0 * double(i - 120);
    if (i >= 160) v = 220.0 - 4.0 * 40.0;
    s.dates.push_back(add_days(d0, i));
    s.values.push_back(v + 1.0);
    s.day_index.push_back(i);
  }
  const fs::path input = dir / "drawdown.csv";
  write_text_file(input.string(), to_csv(s));

  RunConfig cfg;
  cfg.command = "fit";
  cfg.inputs = {input.string()};
  cfg.column = "value";
  cfg.decline = true;
  cfg.output_dir = (dir / "out").string();
  REQUIRE(run_command(cfg) == 0);
  CHECK(fs::exists(dir / "out" / "fit_decline1.json"));
  const auto j =
      nlohmann::json::parse(file_bytes(dir / "out" / "fit_decline1.json"));
  // the drawdown window starts at the global peak (day 120, value 221)
  CHECK(j["window"]["t1"].get<long>() == 120);
  CHECK(j["window"]["p_min"].get<double>() < j["window"]["p_max"].get<double>());
}

TEST_CASE("fit --events all keeps one summary row per event") {
  const fs::path dir = fresh_dir("fit_all");
  const fs::path input = write_full_range_csv(dir);
  RunConfig cfg;
  cfg.command = "fit";
  cfg.inputs = {input.string()};
  cfg.column = "value";
  cfg.event_selector = "all";
  cfg.output_dir = (dir / "out").string();
  const int rc = run_command(cfg);
  CHECK(rc == 0);
  const std::string summary = file_bytes(dir / "out" / "summary.csv");
  std::size_t rows = 0;
  for (const char c : summary) rows += c == '\n';
  CHECK(rows == 15);  // header + 14 events, failures included

  // a rerun on the same input is byte-identical
  cfg.output_dir = (dir / "out2").string();
  REQUIRE(run_command(cfg) == 0);
  CHECK(file_bytes(dir / "out2" / "summary.csv") == summary);
}

TEST_CASE("overlay writes traces for all events and errors on one") {
  const fs::path dir = fresh_dir("overlay");
  const fs::path input = write_full_range_csv(dir);
  RunConfig cfg;
  cfg.command = "overlay";
  cfg.inputs = {input.string()};
  cfg.column = "value";
  cfg.output_dir = (dir / "out").string();
  REQUIRE(run_command(cfg) == 0);
  const std::string overlay = file_bytes(dir / "out" / "overlay.csv");
  for (int id = 1; id <= 14; ++id) {
    CHECK(overlay.find("\n" + std::to_string(id) + ",") != std::string::npos);
  }
  const std::string avg = file_bytes(dir / "out" / "average_curve.csv");
  CHECK(avg.substr(0, 13) == "tau,mean,std\n");
  const auto cat =
      nlohmann::json::parse(file_bytes(dir / "out" / "catalog.json"));
  CHECK(cat["events"].size() == 14);
  CHECK(cat["events"][9]["p_max"].get<double>() == 17803.0);

  RunConfig one = cfg;
  one.event_selector = "6";
  one.output_dir = (dir / "out1").string();
  CHECK(run_command(one) == 2);  // fewer than two events
}

TEST_CASE("correlate writes r2 over the date intersection") {
  const fs::path dir = fresh_dir("corr");
  const fs::path input = write_full_range_csv(dir);
  RunConfig cfg;
  cfg.command = "correlate";
  cfg.inputs = {input.string(), input.string()};
  cfg.column = "value";
  cfg.days = 180;
  cfg.output_dir = (dir / "out").string();
  REQUIRE(run_command(cfg) == 0);
  const auto j =
      nlohmann::json::parse(file_bytes(dir / "out" / "correlation.json"));
  CHECK(j["r2"].get<double>() == 1.0);
  CHECK(j["n"].get<std::size_t>() == 180);
  RunConfig missing = cfg;
  missing.inputs = {input.string()};
  CHECK(run_command(missing) == 2);
}

TEST_CASE("exit codes distinguish validation from I/O failures") {
  RunConfig cfg;
  cfg.command = "benford";
  cfg.inputs = {"/nonexistent/input.csv"};
  cfg.output_dir = fresh_dir("codes").string();
  CHECK(run_command(cfg) == 2);

  // empty CSV input
  const fs::path dir = fresh_dir("codes2");
  write_text_file((dir / "empty.csv").string(), "Date,Open\n");
  RunConfig empty;
  empty.command = "benford";
  empty.inputs = {(dir / "empty.csv").string()};
  empty.output_dir = dir.string();
  CHECK(run_command(empty) == 2);

  // output dir nested under a regular file
  const fs::path blocker = dir / "blocker";
  write_text_file(blocker.string(), "x");
  RunConfig io;
  io.command = "benford";
  io.synthetic = "benford";
  io.output_dir = (blocker / "sub").string();
  CHECK(run_command(io) == 3);

  RunConfig unknown;
  unknown.command = "frobnicate";
  CHECK(run_command(unknown) == 2);
}

TEST_CASE("HSFKIT_OUTPUT_DIR is the fallback output directory") {
  const fs::path dir = fresh_dir("envdir");
  setenv("HSFKIT_OUTPUT_DIR", dir.c_str(), 1);
  RunConfig cfg;
  cfg.command = "benford";
  cfg.synthetic = "benford";
  REQUIRE(run_command(cfg) == 0);
  unsetenv("HSFKIT_OUTPUT_DIR");
  CHECK(fs::exists(dir / "benford.json"));
}

TEST_CASE("the installed binary honors the CLI contract") {
  const fs::path dir = fresh_dir("binary");
  CHECK(run_binary("spectrum --synthetic sine --output-dir " +
                   (dir / "s").string()) == 0);
  CHECK(fs::exists(dir / "s" / "periodogram.csv"));
  CHECK(run_binary("benford --input /missing.csv --output-dir " +
                   dir.string()) == 2);
  CHECK(run_binary("--help") == 0);
  CHECK(run_binary("fit") == 2);  // no input at all
}
