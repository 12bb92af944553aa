#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "tribo/config.hpp"
#include "tribo/framework.hpp"
#include "tribo/io.hpp"
#include "tribo/report.hpp"
#include "tribo/time.hpp"

namespace tribo::cli {

namespace fs = std::filesystem;

namespace {

// Runs `body` and re-labels library errors with the phase they came from.
template <class F>
auto inPhase(const char* phase, F&& body) {
  try {
    return body();
  } catch (const PhaseError&) {
    throw;
  } catch (const Error& e) {
    throw PhaseError(phase, e.kind(), e.what(), {});
  }
}

AssetRecord loadAsset(const Options& o) {
  fs::path p = o.assetConfig;
  if (p.empty() && !o.dataDir.empty() && fs::exists(o.dataDir / "asset.cfg")) {
    p = o.dataDir / "asset.cfg";
  }
  if (p.empty()) {
    throw Error(ErrorKind::Configuration,
                "no asset configuration: pass --asset-config or put asset.cfg in the data dir");
  }
  return loadAssetConfig(p);
}

MetaParameters loadMeta(const Options& o) {
  fs::path p = o.metaConfig;
  if (p.empty() && !o.dataDir.empty() && fs::exists(o.dataDir / "meta.cfg")) {
    p = o.dataDir / "meta.cfg";
  }
  return p.empty() ? MetaParameters{} : loadMetaConfig(p);
}

std::shared_ptr<Registry> bearingRegistry(const AssetRecord& asset) {
  auto registry = std::make_shared<Registry>();
  registerBearingPlugin(*registry,
                        std::make_shared<const AssetCatalog>(std::vector<AssetRecord>{asset}));
  return registry;
}

std::string num(double v) { return formatDouble17(v); }

void writeJson(const fs::path& path, const nlohmann::json& j) {
  writeTextFile(path, j.dump(2) + "\n");
}

// Time grid covering the fitted segment and the 95 % crossing.
std::vector<double> trajectoryGrid(const FeatureSeries& trend, const RULResult& r) {
  const double t0 = trend.times.front();
  double t1 = std::max(trend.times.back(), r.crossingHours95);
  t1 += 0.1 * std::max(t1 - t0, 1.0);
  constexpr int kPoints = 200;
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i) grid[i] = t0 + (t1 - t0) * i / (kPoints - 1);
  return grid;
}

void printRul(const RULResult& r) {
  std::cout << "  last measurement    " << formatIso8601(r.lastMeasurement) << '\n'
            << "  crossing  5 %       " << formatIso8601(r.crossing05) << '\n'
            << "  crossing 50 %       " << formatIso8601(r.crossing50) << '\n'
            << "  crossing 95 %       " << formatIso8601(r.crossing95) << '\n'
            << "  last operation date " << formatIso8601(r.lastOperationDate) << '\n'
            << "  censored fraction   " << num(r.censoredFraction) << '\n';
}

void writeRulArtifacts(const fs::path& dir, const FeatureSeries& trend, const RULResult& r) {
  writeJson(dir / "rul.json", toJson(r));
  const auto grid = trajectoryGrid(trend, r);
  writeTextFile(dir / "trajectory.csv",
                trajectoryCsv(trajectoryQuantiles(r.posterior, grid, r.featureOffset),
                              trend.origin));
  std::string observed = "timestamp,hours,value\n";
  for (std::size_t k = 0; k < trend.size(); ++k) {
    observed += formatIso8601(addHours(trend.origin, trend.times[k])) + ',' +
                num(trend.times[k]) + ',' + num(trend.values[k] - r.featureOffset) + '\n';
  }
  writeTextFile(dir / "degradation_feature.csv", observed);
}

}  // namespace

int runSynth(const Options& o) {
  SyntheticRunSpec spec;
  spec.records = o.records;
  spec.faultType = parseFaultType(o.faultType);
  spec.faultOnset = o.healthy ? o.records : o.faultOnset.value_or(o.records / 2);
  spec.channels = o.channels;
  spec.noiseStd = o.noiseStd;
  spec.seed = o.seed.value_or(1);
  if (spec.records == 0) throw Error(ErrorKind::Configuration, "--records must be positive");
  auto files = writeSyntheticRun(spec, o.out);
  writeTextFile(o.out / "meta.cfg", formatMetaConfig(MetaParameters{}));

  const bool faulty = spec.faultOnset < spec.records;
  nlohmann::json j = {{"records", spec.records},
                      {"channels", spec.channels},
                      {"faultType", faulty ? std::string(toString(spec.faultType)) : "none"},
                      {"faultOnset", faulty ? nlohmann::json(spec.faultOnset) : nlohmann::json()},
                      {"faultFrequency", faulty ? nlohmann::json(spec.faultFrequency()) : nlohmann::json()},
                      {"seed", spec.seed},
                      {"first", formatIso8601(spec.timestampOf(0))},
                      {"last", formatIso8601(spec.timestampOf(spec.records - 1))}};
  writeJson(o.out / "synth.json", j);

  std::cout << "wrote " << files.size() << " records to " << o.out.string() << '\n';
  if (faulty) {
    std::cout << "  fault " << toString(spec.faultType) << " at " << num(spec.faultFrequency())
              << " Hz from record " << spec.faultOnset << '\n';
  } else {
    std::cout << "  healthy run\n";
  }
  return 0;
}

int runIngest(const Options& o) {
  auto run = inPhase("loadData", [&] { return scanRunDirectory(o.dataDir); });
  auto first = inPhase("loadData", [&] { return readIMSRecord(run.records.front().path); });

  nlohmann::json stamps = nlohmann::json::array();
  for (const auto& f : run.records) stamps.push_back(formatIso8601(f.timestamp));
  nlohmann::json j = {{"path", run.path.string()},
                      {"files", run.records.size()},
                      {"channelsPerFile", run.channelsPerFile},
                      {"samplesPerFile", first.front().size()},
                      {"samplingRate", first.front().samplingRate()},
                      {"first", stamps.front()},
                      {"last", stamps.back()},
                      {"timestamps", std::move(stamps)}};
  writeJson(o.out, j);
  std::cout << run.records.size() << " files, " << run.channelsPerFile << " channels, "
            << first.front().size() << " samples per file\n"
            << "  " << j["first"].get<std::string>() << " .. " << j["last"].get<std::string>()
            << '\n';
  return 0;
}

int runFeatures(const Options& o) {
  const AssetRecord asset = loadAsset(o);
  const MetaParameters meta = loadMeta(o).validated();
  const DirectorySource source(o.dataDir);
  auto registry = bearingRegistry(asset);
  auto records = inPhase("loadData", [&] {
    return registry->resolve<IMeasurementData>(kBearingPluginName)->load(source, asset);
  });

  auto vectors = inPhase("featureExtraction", [&] {
    std::vector<FeatureVector> v;
    v.reserve(records.size());
    if (o.targetFault) {
      const FaultType type = parseFaultType(*o.targetFault);
      const auto targets = detectionTargets(asset.faultFrequencies());
      const auto it = std::find_if(targets.begin(), targets.end(),
                                   [type](const auto& t) { return t.type == type; });
      if (it == targets.end()) {
        throw Error(ErrorKind::Configuration, "--target-fault must be BPFI, BPFO or BSF");
      }
      for (const auto& r : records) v.push_back(extractAllFeatures(r, it->frequency, meta));
    } else {
      for (const auto& r : records) v.push_back(timeDomainFeatures(r));
    }
    return v;
  });
  writeFeatureTable(vectors, o.out);
  std::cout << "wrote " << vectors.size() << " feature vectors to " << o.out.string() << '\n';
  return 0;
}

int runDetect(const Options& o) {
  const AssetRecord asset = loadAsset(o);
  const MetaParameters meta = loadMeta(o).validated();
  const DirectorySource source(o.dataDir);
  auto registry = bearingRegistry(asset);
  auto records = inPhase("loadData", [&] {
    return registry->resolve<IMeasurementData>(kBearingPluginName)->load(source, asset);
  });

  auto detector = registry->resolve<IFaultDetector>(kBearingPluginName);
  std::vector<FaultStatus> statuses;
  std::optional<std::size_t> first;
  const std::size_t nBase = std::clamp<std::size_t>(o.baselineCount, 1, records.size());
  const double alarm = inPhase("faultDetection", [&] {
    const double a = detector->calibrate(std::span(records).first(nBase), asset, meta);
    for (std::size_t i = 0; i < records.size(); ++i) {
      statuses.push_back(detector->detect(records[i], asset, meta, a));
      if (statuses.back().isFaulty && !first) first = i;
    }
    return a;
  });

  fs::create_directories(o.out);
  writeTextFile(o.out / "statuses.jsonl", faultStatusLines(statuses));
  const std::size_t shown = first.value_or(records.size() - 1);
  writeTextFile(o.out / "envelope_spectrum.csv",
                spectrumCsv(squaredEnvelopeSpectrum(records[shown])));

  nlohmann::json j = {{"records", records.size()},
                      {"baselineCount", nBase},
                      {"alarmLevel", alarm},
                      {"isFaulty", first.has_value()},
                      {"spectrumRecord", formatIso8601(records[shown].timestamp())}};
  if (first) {
    const auto& s = statuses[*first];
    j["firstDetectionIndex"] = *first;
    j["firstDetection"] = formatIso8601(s.detectionTime);
    j["faultType"] = std::string(toString(s.faultType));
    j["detectedAmplitude"] = s.detectedAmplitude;
  } else {
    j["firstDetectionIndex"] = nullptr;
    j["firstDetection"] = nullptr;
    j["faultType"] = "none";
  }
  writeJson(o.out / "detection.json", j);

  std::cout << records.size() << " records, alarm level " << num(alarm) << '\n';
  if (first) {
    std::cout << "  first detection: record " << *first << " at "
              << j["firstDetection"].get<std::string>() << ", "
              << j["faultType"].get<std::string>() << ", amplitude "
              << num(statuses[*first].detectedAmplitude) << '\n';
  } else {
    std::cout << "  no fault detected\n";
  }
  return 0;
}

int runRul(const Options& o) {
  const MetaParameters meta = loadMeta(o).validated();
  auto vectors = inPhase("loadData", [&] { return readFeatureTable(o.featureTable); });
  if (vectors.size() < 3) {
    throw Error(ErrorKind::InvalidInput, "need at least three feature vectors");
  }
  auto candidates = seriesFromFeatureVectors(vectors);

  std::optional<GoodnessReport> goodness;
  int featureId = 0;
  if (o.featureId) {
    featureId = *o.featureId;
  } else {
    goodness = inPhase("rulEstimation", [&] { return selectDegradationFeature(candidates, meta); });
    featureId = goodness->selectedFeatureId;
  }
  const auto chosen = std::find_if(candidates.begin(), candidates.end(),
                                   [&](const auto& s) { return s.featureId == featureId; });
  if (chosen == candidates.end()) {
    throw Error(ErrorKind::InvalidInput,
                "feature " + std::to_string(featureId) + " is not filled in every row");
  }

  const double fromHours = o.from ? hoursBetween(chosen->origin, parseIso8601(*o.from)) : 0.0;
  AnalysisOptions defaults;
  auto trend = degradationTrend(*chosen, defaults.resampleStepHours, defaults.smoothingWindow,
                                fromHours);
  MetaParameters m = meta;
  const double offset = shiftPositive(trend);
  m.alarmLevelRUL += offset;
  auto result = inPhase("rulEstimation", [&] {
    return estimateRUL(trend, m, vectors.back().timestamp, *o.seed);
  });
  result.alarmLevelRUL = meta.alarmLevelRUL;
  result.featureOffset = offset;

  fs::create_directories(o.out);
  writeRulArtifacts(o.out, trend, result);
  if (goodness) writeTextFile(o.out / "goodness.csv", goodnessTableCsv(*goodness));

  std::cout << "degradation feature " << featureId << " (" << featureName(featureId) << ")\n";
  printRul(result);
  return 0;
}

int runAll(const Options& o) {
  const AssetRecord asset = loadAsset(o);
  const MetaParameters meta = loadMeta(o);
  const DirectorySource source(o.dataDir);
  auto registry = bearingRegistry(asset);
  AnalysisOptions options;
  options.baselineCount = o.baselineCount;
  const auto outcome = analyzeCondition(asset.assetId, *registry, source, meta, *o.seed, options);

  fs::create_directories(o.out);
  writeJson(o.out / "report.json", toJson(outcome));
  writeJson(o.out / "timings.json", toJson(outcome.timings));
  writeTextFile(o.out / "statuses.jsonl", faultStatusLines(outcome.statuses));
  writeFeatureTable(outcome.features, o.out / "features.csv");
  if (outcome.goodness) writeTextFile(o.out / "goodness.csv", goodnessTableCsv(*outcome.goodness));
  if (outcome.rul) writeRulArtifacts(o.out, *outcome.degradationSeries, *outcome.rul);

  std::cout << "asset " << outcome.assetId << ": " << outcome.statuses.size()
            << " records, alarm level " << num(outcome.alarmLevel) << '\n';
  if (outcome.firstDetectionIndex) {
    std::cout << "  fault " << toString(outcome.faultStatus.faultType) << " first detected at "
              << formatIso8601(outcome.faultStatus.detectionTime) << " (record "
              << *outcome.firstDetectionIndex << ")\n";
    std::cout << "  degradation feature " << outcome.goodness->selectedFeatureId << " ("
              << featureName(outcome.goodness->selectedFeatureId) << ")\n";
    printRul(*outcome.rul);
  } else {
    std::cout << "  no fault detected; RUL estimation skipped (rulSkipped = true)\n";
  }
  return 0;
}

int runPerf(const Options& o) {
  const AssetRecord asset = loadAsset(o);
  const MetaParameters meta = loadMeta(o);
  const DirectorySource source(o.dataDir);
  auto registry = bearingRegistry(asset);
  AnalysisOptions options;
  options.baselineCount = o.baselineCount;

  std::vector<PhaseTimings> runs;
  runs.reserve(o.runs);
  for (std::size_t i = 0; i < o.runs; ++i) {
    runs.push_back(
        analyzeCondition(asset.assetId, *registry, source, meta, *o.seed, options).timings);
  }
  const auto rows = aggregateTimings(runs);

  fs::create_directories(o.out);
  writeTextFile(o.out / "perf.csv", perfTableCsv(rows));
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    j.push_back({{"phase", r.phase}, {"mean_s", r.mean}, {"std_s", r.std}, {"runs", r.runs}});
  }
  writeJson(o.out / "perf.json", {{"runs", o.runs}, {"phases", j}});

  std::cout << std::left << std::setw(20) << "phase" << std::setw(26) << "mean [s]"
            << std::setw(26) << "std [s]" << "runs\n";
  for (const auto& r : rows) {
    std::cout << std::setw(20) << r.phase << std::setw(26) << num(r.mean) << std::setw(26)
              << num(r.std) << r.runs << '\n';
  }
  return 0;
}

int runConfigAudit(const Options& o) {
  const auto report = configAudit(loadMeta(o));
  writeJson(o.out, toJson(report));
  std::cout << report.count() << " meta-parameters\n";
  for (const auto& e : report.entries) {
    std::cout << "  " << std::left << std::setw(20) << e.name << std::setw(10)
              << (e.isDefault ? "default" : "set")
              << (e.value.empty() ? "" : e.value);
    if (!e.note.empty()) std::cout << (e.value.empty() ? "" : "  ") << "(" << e.note << ")";
    std::cout << '\n';
  }
  return 0;
}

}  // namespace tribo::cli
