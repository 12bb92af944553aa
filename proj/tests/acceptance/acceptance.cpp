// Acceptance checks. Prints one PASS / FAIL / SKIP line per criterion and
// exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "support/oracles.hpp"
#include "tribo/core.hpp"
#include "tribo/degrade.hpp"
#include "tribo/detect.hpp"
#include "tribo/dsp.hpp"
#include "tribo/framework.hpp"
#include "tribo/io.hpp"
#include "tribo/report.hpp"
#include "tribo/rul.hpp"
#include "tribo/wavelet.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict = Verdict::Fail;
  std::string detail;
};

// Collects sub-check failures of one criterion.
class Checks {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& text) { notes_.push_back(text); }

  Outcome outcome() const {
    std::string text;
    for (const auto& n : notes_) text += (text.empty() ? "" : "; ") + n;
    for (const auto& f : failures_) text += (text.empty() ? "FAILED " : "; FAILED ") + f;
    return {failures_.empty() ? Verdict::Pass : Verdict::Fail, text};
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// 1. Characteristic frequencies of the test-rig bearing

Outcome kinematics() {
  Checks c;
  const double shaftRate = 33.3;
  const auto start = Clock::now();
  const auto f = tribo::computeFaultFrequencies(tribo::rexnordZA2115(), shaftRate);
  const double elapsed = secondsSince(start);

  const auto within = [](double value, double reference) {
    return std::abs(value - reference) <= 0.01 * reference;
  };
  c.note("BPFI " + fmt(f.bpfi) + " BPFO " + fmt(f.bpfo) + " 2*BSF " + fmt(2.0 * f.bsf) + " Hz");
  c.require(within(f.bpfi, 297.0), "BPFI within 1% of 297 Hz");
  c.require(within(f.bpfo, 236.0), "BPFO within 1% of 236 Hz");
  c.require(within(2.0 * f.bsf, 278.0), "2*BSF within 1% of 278 Hz");
  c.require(f.bpfi + f.bpfo == 16.0 * shaftRate, "BPFI + BPFO == 16 * 33.3 exactly");
  c.note("runtime " + fmt(elapsed * 1e3, 3) + " ms");
  c.require(elapsed < 1e-3, "runtime < 1 ms");
  return c.outcome();
}

// ---------------------------------------------------------------------------
// 2. Wavelet banding and perfect reconstruction

Outcome waveletBanding() {
  Checks c;
  const double fs = 20480.0;
  const int levels = 12;
  const auto start = Clock::now();

  const auto band = tribo::detailBand(fs, 1);
  c.require(band.low == 5120.0 && band.high == 10240.0, "level-1 band is [5120, 10240] Hz");

  std::mt19937_64 rng(2048);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(20480);
    for (auto& v : x) v = normal(rng);
    const auto d = tribo::waveletDecompose(x, fs, "bior6.8", levels);
    if (trial == 0) {
      c.require(d.details.size() == static_cast<std::size_t>(levels), "twelve detail levels");
      c.require(d.bandEdges.front().low == 5120.0 && d.bandEdges.front().high == 10240.0,
                "decomposition reports the level-1 band");
    }
    std::vector<double> sum = d.approximation;
    for (const auto& detail : d.details) {
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += detail[i];
    }
    double err = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      err += (sum[i] - x[i]) * (sum[i] - x[i]);
      norm += x[i] * x[i];
    }
    worst = std::max(worst, std::sqrt(err / norm));
  }
  const double elapsed = secondsSince(start);
  c.note("worst relative residual " + fmt(worst, 3) + ", runtime " + fmt(elapsed, 3) + " s");
  c.require(worst < 1e-8, "relative residual < 1e-8");
  c.require(elapsed < 5.0, "runtime < 5 s");
  return c.outcome();
}

// ---------------------------------------------------------------------------
// 3. End-to-end detection on synthetic runs

// Index of the first record whose status fires, or -1.
template <typename Fires>
long firstFiring(std::size_t count, Fires fires) {
  for (std::size_t i = 0; i < count; ++i) {
    if (fires(i)) return static_cast<long>(i);
  }
  return -1;
}

double bpfoReading(const std::vector<tribo::TargetReading>& readings) {
  for (const auto& r : readings) {
    if (r.target.type == tribo::FaultType::BPFO) return r.rawAmplitude;
  }
  return 0.0;
}

Outcome detection() {
  Checks c;
  const auto start = Clock::now();
  const tribo::MetaParameters meta;

  // Broadband run: records 1-100 noise, 101-200 an outer-race fault.
  tribo::SyntheticRunSpec spec;
  spec.records = 200;
  spec.faultOnset = 100;
  spec.faultType = tribo::FaultType::BPFO;
  spec.channels = 1;
  spec.seed = 31;
  const auto freqs = spec.asset.faultFrequencies();

  std::vector<tribo::VibrationRecord> run;
  run.reserve(spec.records);
  for (std::size_t i = 0; i < spec.records; ++i) {
    run.push_back(tribo::synthesizeRunRecord(spec, i).front());
  }
  const std::span<const tribo::VibrationRecord> baseline(run.data(), 100);

  double baselineMean = 0.0;
  for (const auto& r : baseline) baselineMean += tribo::baselineMaximum(r);
  baselineMean /= static_cast<double>(baseline.size());
  const double alarm = tribo::steadyStateAlarmLevel(baseline, meta);

  std::vector<tribo::FaultStatus> statuses;
  statuses.reserve(run.size());
  for (const auto& r : run) statuses.push_back(tribo::detectFault(r, freqs, meta, alarm));

  double weakestFault = std::numeric_limits<double>::infinity();
  for (std::size_t i = 100; i < run.size(); ++i) {
    weakestFault = std::min(weakestFault, bpfoReading(statuses[i].readings));
  }
  const double strength = weakestFault / baselineMean;
  c.note("fault envelope amplitude at " + fmt(freqs.bpfo) + " Hz >= " + fmt(strength, 3) +
         " x baseline");
  c.require(strength >= 5.0, "fault envelope amplitude >= 5 x baseline");

  const long first =
      firstFiring(statuses.size(), [&](std::size_t i) { return statuses[i].isFaulty; });
  c.note("3x rule first fires at " + (first < 0 ? std::string("never")
                                               : "record " + std::to_string(first + 1)));
  c.require(first >= 100 && first <= 104, "first firing within records 101-105");
  c.require(first < 0 || statuses[static_cast<std::size_t>(first)].faultType ==
                              tribo::FaultType::BPFO,
            "detected type is BPFO");

  // Band-limited run: strong low-band noise, resonance above it, growing
  // impulses. The wavelet path isolates the resonance band.
  const double fs = tribo::kImsSamplingRate;
  const std::size_t records = 200;
  std::vector<tribo::VibrationRecord> banded;
  banded.reserve(records);
  for (std::size_t i = 0; i < records; ++i) {
    tribo::SyntheticFaultSpec s;
    s.faultFrequency = freqs.bpfo;
    s.resonanceFrequency = 7500.0;
    s.impulseDecay = 1500.0;
    s.noiseStd = 0.02;
    s.seed = 7000 + i;
    s.impulseAmplitude = i < 100 ? 0.0 : 0.02 * std::exp(0.06 * static_cast<double>(i - 100));
    auto r = tribo::synthesizeFaultSignal(s);
    std::vector<double> x(r.samples().begin(), r.samples().end());
    tribo::addBandLimitedNoise(x, fs, 50.0, 4000.0, 1.0, 9000 + i);
    banded.emplace_back(tribo::Instant{}, fs, std::move(x));
  }
  const std::span<const tribo::VibrationRecord> bandedBaseline(banded.data(), 100);
  const auto alarms = tribo::steadyStatePathAlarms(bandedBaseline, meta);
  const auto targets = tribo::detectionTargets(freqs);

  std::vector<tribo::PathVerdict> verdicts;
  verdicts.reserve(records);
  for (const auto& r : banded) {
    const auto readings = tribo::readEnvelopeTargets(r.samples(), fs, targets, meta);
    verdicts.push_back(tribo::judgePaths(readings, alarms));
  }
  const long firstRaw =
      firstFiring(records, [&](std::size_t i) { return verdicts[i].rawFired; });
  const long firstWavelet =
      firstFiring(records, [&](std::size_t i) { return verdicts[i].waveletFired; });
  const auto recordLabel = [](long index) {
    return index < 0 ? std::string("never") : "record " + std::to_string(index + 1);
  };
  c.note("band-limited: wavelet path first fires at " + recordLabel(firstWavelet) +
         (firstWavelet >= 0
              ? " (level " +
                    std::to_string(verdicts[static_cast<std::size_t>(firstWavelet)].waveletLevel) +
                    ")"
              : std::string()) +
         ", raw path at " + recordLabel(firstRaw));
  c.require(firstWavelet >= 100, "wavelet path fires, on the faulty records only");
  c.require(firstRaw >= 100, "raw path fires, on the faulty records only");
  c.require(firstWavelet >= 0 && firstRaw >= 0 && firstWavelet <= firstRaw,
            "wavelet path fires no later than the raw path");

  const double elapsed = secondsSince(start);
  c.note("runtime " + fmt(elapsed, 3) + " s");
  c.require(elapsed < 60.0, "runtime < 60 s");
  return c.outcome();
}

// ---------------------------------------------------------------------------
// 4. Degradation feature selection

Outcome selection() {
  Checks c;
  const auto start = Clock::now();
  const std::size_t n = 600;
  const double step = 10.0 / 60.0;

  std::mt19937_64 rng(404);
  std::normal_distribution<double> normal(0.0, 1.0);
  tribo::FeatureSeries exponential{1, {}, {}, {}};
  tribo::FeatureSeries ramp{2, {}, {}, {}};
  tribo::FeatureSeries noise{3, {}, {}, {}};
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * step;
    for (auto* s : {&exponential, &ramp, &noise}) s->times.push_back(t);
    exponential.values.push_back(std::exp(0.02 * t));
    ramp.values.push_back(1.0 + 0.5 * t);
    noise.values.push_back(1.0 + 0.1 * normal(rng));
  }
  const std::vector<tribo::FeatureSeries> candidates{exponential, ramp, noise};

  tribo::MetaParameters meta;
  meta.degParamWeights = {1.0, 1.0, 1.0};
  const auto report = tribo::selectDegradationFeature(candidates, meta.validated());

  const auto& e = report.features.at(0);
  const auto& r = report.features.at(1);
  const auto& w = report.features.at(2);
  for (const auto& g : report.features) {
    c.note("feature " + std::to_string(g.featureId) + " corr " + fmt(g.metrics.corr) + " mon " +
           fmt(g.metrics.mon) + " rob " + fmt(g.metrics.rob) + " J " + fmt(g.score));
    for (double m : {g.metrics.corr, g.metrics.mon, g.metrics.rob}) {
      c.require(m >= 0.0 && m <= 1.0, "metric of feature " + std::to_string(g.featureId) +
                                          " within [0, 1]");
    }
    c.require(!g.degenerate, "feature " + std::to_string(g.featureId) + " scored");
  }
  c.require(e.score > w.score, "J(exponential) > J(noise)");
  c.require(r.metrics.mon == 1.0, "Mon(ramp) == 1");

  const double elapsed = secondsSince(start);
  c.note("runtime " + fmt(elapsed * 1e3, 3) + " ms");
  c.require(elapsed < 1.0, "runtime < 1 s");
  return c.outcome();
}

// ---------------------------------------------------------------------------
// 5. RUL recovery and sampler correctness

Outcome rulRecovery() {
  Checks c;
  const auto start = Clock::now();
  const double cTrue = 1.0, bTrue = 0.02, threshold = 3.5;

  std::mt19937_64 rng(5150);
  std::normal_distribution<double> normal(0.0, 1.0);
  tribo::FeatureSeries series;
  series.featureId = 6;
  series.origin = tribo::makeInstant(2004, 2, 12, 10, 32, 39);
  for (int k = 0; k < 500; ++k) {
    const double t = 0.1 * k;
    const double clean = cTrue * std::exp(bTrue * t);
    series.times.push_back(t);
    series.values.push_back(clean * (1.0 + 0.05 * normal(rng)));
  }
  tribo::MetaParameters meta;
  meta.alarmLevelRUL = threshold;
  const auto last = tribo::addHours(series.origin, series.times.back());

  const auto a = tribo::estimateRUL(series, meta, last, 77);
  const double analytic = std::log(threshold) / bTrue;
  const double relErr = std::abs(a.crossingHours50 - analytic) / analytic;
  c.note("median crossing " + fmt(a.crossingHours50, 5) + " h vs " + fmt(analytic, 5) +
         " h (" + fmt(100.0 * relErr, 3) + "%)");
  c.require(relErr <= 0.05, "median within 5% of ln(3.5)/0.02");
  c.require(a.crossingHours05 <= a.crossingHours50 && a.crossingHours50 <= a.crossingHours95,
            "crossing quantiles ordered");
  c.require(a.crossing05 <= a.crossing50 && a.crossing50 <= a.crossing95,
            "crossing instants ordered");

  const auto b = tribo::estimateRUL(series, meta, last, 77);
  bool identical = a.crossingHours05 == b.crossingHours05 &&
                   a.crossingHours50 == b.crossingHours50 &&
                   a.crossingHours95 == b.crossingHours95 &&
                   a.posterior.samples.size() == b.posterior.samples.size();
  for (std::size_t i = 0; identical && i < a.posterior.samples.size(); ++i) {
    identical = a.posterior.samples[i] == b.posterior.samples[i];
  }
  c.require(identical, "same seed reproduces bit-exactly");

  // Standard bivariate Gaussian target.
  const tribo::LogDensity gauss = [](const Eigen::Vector2d& x) { return -0.5 * x.squaredNorm(); };
  const auto chain = tribo::adaptiveMetropolis(gauss, Eigen::Vector2d(0.5, -0.5), 50000, 2024);
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& s : chain.samples) mean += s;
  mean /= static_cast<double>(chain.samples.size());
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const auto& s : chain.samples) cov += (s - mean) * (s - mean).transpose();
  cov /= static_cast<double>(chain.samples.size() - 1);
  const double covErr = (cov - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
  c.note("AM mean (" + fmt(mean(0), 3) + ", " + fmt(mean(1), 3) + "), covariance [" +
         fmt(cov(0, 0), 3) + " " + fmt(cov(0, 1), 3) + "; " + fmt(cov(1, 0), 3) + " " +
         fmt(cov(1, 1), 3) + "]");
  c.require(mean.cwiseAbs().maxCoeff() <= 0.05, "AM mean within 0.05");
  c.require(covErr <= 0.10, "AM covariance within 10%");

  const double elapsed = secondsSince(start);
  c.note("runtime " + fmt(elapsed, 3) + " s");
  c.require(elapsed < 120.0, "runtime < 2 min");
  return c.outcome();
}

// ---------------------------------------------------------------------------
// 6. Pipeline contract

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void registerAsset(tribo::Registry& registry, const tribo::AssetRecord& asset) {
  tribo::registerBearingPlugin(
      registry, std::make_shared<const tribo::AssetCatalog>(std::vector{asset}));
}

Outcome pipelineContract() {
  Checks c;
  tribo::AnalysisOptions options;
  options.baselineCount = 20;

  tribo::SyntheticRunSpec healthy;
  healthy.records = 40;
  healthy.faultType = tribo::FaultType::None;
  healthy.faultOnset = healthy.records;
  healthy.channels = 1;
  healthy.seed = 61;
  tribo::Registry registry;
  registerAsset(registry, healthy.asset);
  const auto h = tribo::analyzeCondition(healthy.asset.assetId, registry,
                                         tribo::SyntheticSource(healthy), {}, 1, options);
  const auto hJson = tribo::toJson(h);
  c.require(!h.faultStatus.isFaulty, "healthy run is not faulty");
  c.require(h.timings.rulSkipped && !h.timings.rulEstimation, "healthy run skips the RUL phase");
  c.require(!h.rul && !hJson.contains("rul"), "healthy run has no RUL output");
  c.require(tribo::toJson(h.timings)["rulEstimation"].is_null(),
            "healthy run has no RUL timing");

  tribo::SyntheticRunSpec faulty = healthy;
  faulty.records = 80;
  faulty.faultType = tribo::FaultType::BPFO;
  faulty.faultOnset = 40;
  faulty.seed = 62;
  std::vector<tribo::PhaseTimings> runs;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto f = tribo::analyzeCondition(faulty.asset.assetId, registry,
                                           tribo::SyntheticSource(faulty), {}, seed, options);
    runs.push_back(f.timings);
    if (seed == 1) {
      c.require(f.faultStatus.isFaulty, "faulty run is detected");
      c.require(f.rul.has_value() && !f.timings.rulSkipped, "faulty run estimates RUL");
      c.require(f.timings.rulEstimation.has_value(), "faulty run has all four phase timings");
      c.note("faulty run timings: load " + fmt(f.timings.loadData, 3) + " s, features " +
             fmt(f.timings.featureExtraction, 3) + " s, detection " +
             fmt(f.timings.faultDetection, 3) + " s, RUL " +
             fmt(f.timings.rulEstimation.value_or(-1.0), 3) + " s");
    }
  }
  const auto stats = tribo::aggregateTimings(runs);
  const std::vector<std::string> phases{"loadData", "featureExtraction", "faultDetection",
                                        "rulEstimation"};
  c.require(stats.size() == 4, "four perf rows");
  for (std::size_t i = 0; i < std::min<std::size_t>(stats.size(), 4); ++i) {
    c.require(stats[i].phase == phases[i], "perf row " + phases[i]);
    c.require(stats[i].runs == 3 && std::isfinite(stats[i].mean) && std::isfinite(stats[i].std),
              "perf row " + phases[i] + " has mean and std over three runs");
  }
  const auto table = tribo::perfTableCsv(stats);
  c.require(table.rfind("phase,mean_s,std_s,runs\n", 0) == 0, "perf table header");

#ifdef TRIBO_CLI_PATH
  oracle::TempDir dir("acceptance-cli");
  const auto data = dir.path() / "run";
  const auto out = dir.path() / "perf";
  const std::string cli = TRIBO_CLI_PATH;
  const std::string quiet = " > " + (dir.path() / "log.txt").string() + " 2>&1";
  const int synth = std::system((cli + " synth --out " + data.string() +
                                 " --records 40 --fault-onset 20 --channels 1 --seed 5" + quiet)
                                    .c_str());
  const int perf = std::system((cli + " perf --data-dir " + data.string() +
                                " --seed 1 --baseline-count 10 --runs 2 --out " + out.string() +
                                quiet)
                                   .c_str());
  c.require(synth == 0 && perf == 0, "CLI synth and perf succeed");
  if (synth == 0 && perf == 0) {
    const auto csv = slurp(out / "perf.csv");
    c.require(csv.rfind("phase,mean_s,std_s,runs\n", 0) == 0, "CLI perf.csv header");
    c.require(std::count(csv.begin(), csv.end(), '\n') == 5, "CLI perf.csv has four rows");
    for (const auto& p : phases) {
      c.require(csv.find("\n" + p + ",") != std::string::npos, "CLI perf.csv row " + p);
    }
  }
  c.note("perf via library and CLI");
#else
  c.note("perf via library");
#endif
  return c.outcome();
}

// ---------------------------------------------------------------------------
// 7. IMS datasets (optional)

constexpr double kReferenceScores[10] = {0.438, 0.342, 0.418, 0.348, 0.424,
                                0.453, 0.359, 0.328, 0.270, 0.235};

struct ImsCase {
  std::string name;
  fs::path dir;
  std::size_t channel;
  tribo::FaultType expected;
  double expectedDays;
};

Outcome imsDatasets() {
  const char* root = std::getenv("TRIBO_IMS_DIR");
  if (root == nullptr || !fs::is_directory(root)) {
    return {Verdict::Skip, "set TRIBO_IMS_DIR to the directory holding 1st_test and 2nd_test"};
  }
  const fs::path base(root);
  const std::vector<ImsCase> cases{
      {"dataset 1 bearing 3", base / "1st_test", 4, tribo::FaultType::BPFI, 31.5},
      {"dataset 2 bearing 1", base / "2nd_test", 0, tribo::FaultType::BPFO, 3.8}};
  for (const auto& ims : cases) {
    if (!fs::is_directory(ims.dir)) return {Verdict::Skip, ims.dir.string() + " missing"};
  }

  Checks c;
  for (const auto& ims : cases) {
    tribo::AssetRecord asset{ims.name, tribo::rexnordZA2115(), 2000.0 / 60.0, {}, ims.channel};
    tribo::Registry registry;
    registerAsset(registry, asset);
    const tribo::DirectorySource source(ims.dir);
    try {
      const auto o = tribo::analyzeCondition(asset.assetId, registry, source, {}, 1);
      c.require(o.faultStatus.isFaulty && o.firstDetectionIndex.has_value(),
                ims.name + " detected");
      if (!o.firstDetectionIndex) continue;
      const auto& files = source.run().records;
      const double days =
          tribo::hoursBetween(files.front().timestamp,
                              files[*o.firstDetectionIndex].timestamp) /
          24.0;
      c.note(ims.name + ": " + std::string(tribo::toString(o.faultStatus.faultType)) +
             " at " + fmt(days, 4) + " days");
      c.require(o.faultStatus.faultType == ims.expected, ims.name + " fault type");
      c.require(std::abs(days - ims.expectedDays) <= 1.0, ims.name + " detection within 1 day");
      if (ims.expected == tribo::FaultType::BPFI && o.goodness) {
        const auto& g = *o.goodness;
        std::string scores;
        for (const auto& f : g.features) {
          scores += " " + fmt(f.score, 3);
          if (f.featureId >= 1 && f.featureId <= 10) {
            c.require(std::abs(f.score - kReferenceScores[f.featureId - 1]) <= 0.05,
                      "feature " + std::to_string(f.featureId) + " score within 0.05");
          }
        }
        c.note(ims.name + " scores" + scores);
        c.require(g.selectedFeatureId == 6, "feature 6 maximal");
      }
    } catch (const std::exception& e) {
      c.require(false, ims.name + ": " + e.what());
    }
  }
  return c.outcome();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "kinematics", kinematics},
      {2, "wavelet banding", waveletBanding},
      {3, "detection end-to-end", detection},
      {4, "degradation feature selection", selection},
      {5, "RUL recovery", rulRecovery},
      {6, "pipeline contract", pipelineContract},
      {7, "IMS datasets", imsDatasets},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    Outcome o;
    try {
      o = criterion.run();
    } catch (const std::exception& e) {
      o = {Verdict::Fail, std::string("unexpected error: ") + e.what()};
    }
    const char* label = o.verdict == Verdict::Pass   ? "PASS"
                        : o.verdict == Verdict::Skip ? "SKIP"
                                                     : "FAIL";
    if (o.verdict == Verdict::Fail) ++failed;
    std::cout << "criterion " << criterion.id << " " << label << " " << criterion.name << ": "
              << o.detail << std::endl;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
