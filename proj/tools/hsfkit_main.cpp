#include <string>

#include "CLI11.hpp"
#include "hsfkit/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Price-episode analysis: spectra, Benford conformity, "
               "hockey-stick fits, event overlays and correlation"};
  app.require_subcommand(1);

  hsfkit::RunConfig cfg;
  long long t1 = -1;
  long long t2 = -1;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.inputs,
                    "input price CSV (Date + price column header)");
    sub->add_option("--column", cfg.column, "price column name")
        ->default_val("Open");
    sub->add_option("--from", cfg.from_date, "window start date (YYYY-MM-DD)");
    sub->add_option("--to", cfg.to_date, "window end date (YYYY-MM-DD)");
    sub->add_option("--days", cfg.days, "window length in days from --from");
    sub->add_option("--seed", cfg.seed, "seed for sampled synthetics");
    sub->add_option("--output-dir", cfg.output_dir,
                    "output directory (default $HSFKIT_OUTPUT_DIR or .)");
    sub->add_flag("--paper-defaults", cfg.paper_defaults,
                  "pin all documented default windows/grids");
  };

  auto* spectrum = app.add_subcommand(
      "spectrum", "periodogram, spectrogram and discontinuity detections");
  add_common(spectrum);
  spectrum->add_option("--synthetic", cfg.synthetic,
                       "sine | sine_step | sine_plus_sine");
  spectrum->add_option("--n", cfg.synth_n, "synthetic length");
  spectrum->add_option("--dz", cfg.dz, "step height for sine_step");
  spectrum->add_option("--window-len", cfg.window_len,
                       "spectrogram window length");
  spectrum->add_option("--hop", cfg.hop, "spectrogram hop");
  spectrum->add_option("--threshold", cfg.threshold,
                       "detection threshold (x median column power)");

  auto* benford =
      app.add_subcommand("benford", "first-digit conformity report");
  add_common(benford);
  benford->add_option("--synthetic", cfg.synthetic, "benford | loguniform");
  benford->add_option("--n", cfg.synth_n, "synthetic sample count");

  auto* fit = app.add_subcommand(
      "fit", "hockey-stick calibration of cataloged or explicit windows");
  add_common(fit);
  fit->add_option("--event,--events", cfg.event_selector,
                  "catalog event number or 'all'");
  fit->add_option("--t1", t1, "explicit window start day_index");
  fit->add_option("--t2", t2, "explicit window end day_index");
  fit->add_flag("--decline", cfg.decline,
                "fit the largest decline in the window instead of a rise");
  fit->add_flag("--refine", cfg.refine,
                "add a coarse-to-fine refinement pass");

  auto* overlay = app.add_subcommand(
      "overlay", "normalized self-similarity overlay and average curve");
  add_common(overlay);
  overlay->add_option("--event,--events", cfg.event_selector,
                      "catalog event number or 'all'");

  auto* correlate =
      app.add_subcommand("correlate", "r^2 of two series over common dates");
  add_common(correlate);

  CLI11_PARSE(app, argc, argv);

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.t1 = t1;
  cfg.t2 = t2;
  return hsfkit::run_command(cfg);
}
