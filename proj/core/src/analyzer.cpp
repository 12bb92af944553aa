#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>

#include "tribo/framework.hpp"

namespace tribo {

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs `body`, records its duration into `slot` and rethrows failures as
// PhaseError carrying the timings so far.
template <class F>
auto timed(const char* phase, double& slot, PhaseTimings& timings, Clock::time_point runStart,
           F&& body) {
  const auto start = Clock::now();
  auto finish = [&] {
    slot = secondsSince(start);
    timings.total = secondsSince(runStart);
  };
  try {
    auto result = body();
    finish();
    return result;
  } catch (const PhaseError&) {
    throw;
  } catch (const Error& e) {
    finish();
    throw PhaseError(phase, e.kind(), e.what(), timings);
  } catch (const std::exception& e) {
    finish();
    throw PhaseError(phase, ErrorKind::InvalidInput, e.what(), timings);
  }
}

struct Loaded {
  AssetRecord asset;
  std::vector<VibrationRecord> records;
};

FeatureSeries sliceFrom(const FeatureSeries& s, double fromHours) {
  FeatureSeries out;
  out.featureId = s.featureId;
  out.origin = s.origin;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.times[k] >= fromHours) {
      out.times.push_back(s.times[k]);
      out.values.push_back(s.values[k]);
    }
  }
  return out;
}

}  // namespace

double shiftPositive(FeatureSeries& s) {
  if (s.values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
  if (*lo > 0.0) return 0.0;
  const double span = *hi - *lo;
  const double offset = -*lo + (span > 0.0 ? 0.01 * span : 1.0);
  for (double& v : s.values) v += offset;
  return offset;
}

FeatureSeries degradationTrend(const FeatureSeries& feature, double stepHours, int window,
                               double fromHours) {
  auto uniform = resampleUniform(feature, stepHours);
  auto trend = smoothFeature(uniform, std::clamp(window, 1, static_cast<int>(uniform.size())));
  auto segment = sliceFrom(trend, fromHours);
  return segment.size() < 3 ? trend : segment;
}

AnalysisOutcome ConditionAnalyzer::analyze(const std::string& assetId,
                                           const MeasurementSource& source,
                                           const MetaParameters& metaIn,
                                           std::uint64_t seed) const {
  const auto runStart = Clock::now();
  AnalysisOutcome out;
  out.assetId = assetId;
  out.seed = seed;
  PhaseTimings& t = out.timings;

  auto loaded = timed("loadData", t.loadData, t, runStart, [&] {
    auto assets = registry_.resolve<IAssetData>(options_.plugins.assetData);
    auto data = registry_.resolve<IMeasurementData>(options_.plugins.measurementData);
    Loaded l{assets->asset(assetId), {}};
    l.records = data->load(source, l.asset);
    if (l.records.empty()) throw Error(ErrorKind::InvalidInput, "no records loaded");
    return l;
  });
  const MetaParameters meta = metaIn.validated();
  const AssetRecord& asset = loaded.asset;
  const auto& records = loaded.records;

  out.features = timed("featureExtraction", t.featureExtraction, t, runStart, [&] {
    auto fx = registry_.resolve<IFeatureExtractor>(options_.plugins.featureExtractor);
    std::vector<FeatureVector> v;
    v.reserve(records.size());
    for (const auto& r : records) v.push_back(fx->extract(r, asset, meta));
    return v;
  });

  timed("faultDetection", t.faultDetection, t, runStart, [&] {
    auto detector = registry_.resolve<IFaultDetector>(options_.plugins.faultDetector);
    const std::size_t nBase =
        std::clamp<std::size_t>(options_.baselineCount, 1, records.size());
    out.alarmLevel = detector->calibrate(std::span(records).first(nBase), asset, meta);
    out.statuses.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      out.statuses.push_back(detector->detect(records[i], asset, meta, out.alarmLevel));
      if (out.statuses.back().isFaulty && !out.firstDetectionIndex) out.firstDetectionIndex = i;
    }
    out.faultStatus = out.firstDetectionIndex ? out.statuses[*out.firstDetectionIndex]
                                              : out.statuses.back();
    return 0;
  });

  if (!out.faultStatus.isFaulty) {
    t.rulSkipped = true;
    t.rulEstimation.reset();
    t.total = secondsSince(runStart);
    return out;
  }

  t.rulSkipped = false;
  double& rulSeconds = t.rulEstimation.emplace(0.0);
  timed("rulEstimation", rulSeconds, t, runStart, [&] {
    const FaultType type = out.faultStatus.faultType;
    for (std::size_t i = 0; i < records.size(); ++i) {
      for (const auto& reading : out.statuses[i].readings) {
        if (reading.target.type != type) continue;
        out.features[i].set(Feature::EnvelopeDefectAmplitude, reading.rawAmplitude);
        out.features[i].set(Feature::WaveletDefectAmplitude, reading.waveletAmplitude);
      }
    }
    auto fx = registry_.resolve<IFeatureExtractor>(options_.plugins.featureExtractor);
    auto candidates = seriesFromFeatureVectors(out.features);
    out.goodness = fx->selectDegradationFeature(candidates, meta);
    const auto chosen = std::find_if(candidates.begin(), candidates.end(), [&](const auto& s) {
      return s.featureId == out.goodness->selectedFeatureId;
    });

    // Fit on the degrading segment only.
    const double detectedAt = hoursBetween(chosen->origin, out.faultStatus.detectionTime);
    auto segment = degradationTrend(*chosen, options_.resampleStepHours,
                                    options_.smoothingWindow, detectedAt);

    MetaParameters m = meta;
    const double offset = shiftPositive(segment);
    m.alarmLevelRUL = meta.alarmLevelRUL + offset;
    out.degradationSeries = segment;

    auto rulAlgo = registry_.resolve<IRULalgorithm>(options_.plugins.rulAlgorithm);
    auto result = rulAlgo->estimate(segment, m, records.back().timestamp(), seed);
    result.alarmLevelRUL = meta.alarmLevelRUL;
    result.featureOffset = offset;
    out.rul = std::move(result);
    return 0;
  });
  t.total = secondsSince(runStart);
  return out;
}

AnalysisOutcome analyzeCondition(const std::string& assetId, const Registry& registry,
                                 const MeasurementSource& source, const MetaParameters& meta,
                                 std::uint64_t seed, const AnalysisOptions& options) {
  return ConditionAnalyzer(registry, options).analyze(assetId, source, meta, seed);
}

}  // namespace tribo
