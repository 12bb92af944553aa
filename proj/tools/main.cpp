#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "commands.hpp"
#include "tribo/error.hpp"
#include "tribo/framework.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kPipelineError = 1;

}  // namespace

int main(int argc, char** argv) {
  using tribo::cli::Options;
  Options o;
  std::function<int(const Options&)> action;

  CLI::App app{"Bearing fault detection and remaining-useful-life estimation"};
  app.require_subcommand(1, 1);

  auto dataDir = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--data-dir", o.dataDir, "Run directory of IMS-layout files");
    if (required) opt->required();
    opt->check(CLI::ExistingDirectory);
  };
  auto asset = [&](CLI::App* c) {
    c->add_option("--asset-config", o.assetConfig,
                  "Asset key-value file (default: <data-dir>/asset.cfg)")
        ->check(CLI::ExistingFile);
  };
  auto meta = [&](CLI::App* c) {
    c->add_option("--meta-config", o.metaConfig,
                  "Meta-parameter key-value file (default: <data-dir>/meta.cfg, else defaults)")
        ->check(CLI::ExistingFile);
  };
  auto out = [&](CLI::App* c, const std::string& what) {
    c->add_option("--out", o.out, what)->required();
  };
  auto seed = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--seed", o.seed, "Random seed");
    if (required) opt->required();
  };
  auto baseline = [&](CLI::App* c) {
    c->add_option("--baseline-count", o.baselineCount,
                  "Leading records used to calibrate the alarm level")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  };
  auto bind = [&](CLI::App* c, int (*fn)(const Options&)) {
    c->callback([&action, fn] { action = fn; });
  };

  auto* synth = app.add_subcommand("synth", "Write a synthetic run-to-failure directory");
  out(synth, "Output directory");
  seed(synth, false);
  synth->add_option("--records", o.records, "Number of records")->capture_default_str();
  synth->add_option("--fault-onset", o.faultOnset, "First faulty record (0-based)");
  synth->add_option("--fault-type", o.faultType, "BPFI, BPFO or BSF")->capture_default_str();
  synth->add_flag("--healthy", o.healthy, "No fault at all");
  synth->add_option("--channels", o.channels, "Channels per file")->capture_default_str();
  synth->add_option("--noise", o.noiseStd, "Noise standard deviation [g]")
      ->capture_default_str();
  bind(synth, tribo::cli::runSynth);

  auto* ingest = app.add_subcommand("ingest", "Scan and validate a run directory");
  dataDir(ingest, true);
  out(ingest, "Summary JSON file");
  bind(ingest, tribo::cli::runIngest);

  auto* features = app.add_subcommand("features", "Write the per-record feature table");
  dataDir(features, true);
  asset(features);
  meta(features);
  out(features, "Feature table CSV file");
  features->add_option("--target-fault", o.targetFault,
                       "Also fill the defect-amplitude features for BPFI, BPFO or BSF");
  bind(features, tribo::cli::runFeatures);

  auto* detect = app.add_subcommand("detect", "Per-record fault status");
  dataDir(detect, true);
  asset(detect);
  meta(detect);
  baseline(detect);
  out(detect, "Output directory");
  bind(detect, tribo::cli::runDetect);

  auto* rul = app.add_subcommand("rul", "Remaining useful life from a feature table");
  rul->add_option("--features", o.featureTable, "Feature table CSV")
      ->required()
      ->check(CLI::ExistingFile);
  rul->add_option("--feature-id", o.featureId, "Degradation feature (default: best score)")
      ->check(CLI::Range(1, 10));
  rul->add_option("--from", o.from, "Fit from this ISO-8601 instant on");
  meta(rul);
  seed(rul, true);
  out(rul, "Output directory");
  bind(rul, tribo::cli::runRul);

  auto* all = app.add_subcommand("run-all", "Load, features, detection and RUL in sequence");
  dataDir(all, true);
  asset(all);
  meta(all);
  baseline(all);
  seed(all, true);
  out(all, "Output directory");
  bind(all, tribo::cli::runAll);

  auto* perf = app.add_subcommand("perf", "Repeat run-all and report per-phase timing");
  dataDir(perf, true);
  asset(perf);
  meta(perf);
  baseline(perf);
  seed(perf, true);
  perf->add_option("--runs", o.runs, "Repetitions")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  out(perf, "Output directory");
  bind(perf, tribo::cli::runPerf);

  auto* audit = app.add_subcommand("config-audit", "List the meta-parameters");
  meta(audit);
  out(audit, "Audit JSON file");
  bind(audit, tribo::cli::runConfigAudit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    return action(o);
  } catch (const tribo::PhaseError& e) {
    std::cerr << "error in phase " << e.phase() << " (" << tribo::toString(e.cause())
              << "): " << e.what() << '\n';
    return kPipelineError;
  } catch (const tribo::Error& e) {
    std::cerr << "error (" << tribo::toString(e.kind()) << "): " << e.what() << '\n';
    return kPipelineError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPipelineError;
  }
}
