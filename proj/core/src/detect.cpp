#include "tribo/detect.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "tribo/error.hpp"

namespace tribo {

std::string_view toString(FaultType type) noexcept {
  switch (type) {
    case FaultType::None: return "none";
    case FaultType::BPFI: return "BPFI";
    case FaultType::BPFO: return "BPFO";
    case FaultType::BSF: return "BSF";
    case FaultType::FTF: return "FTF";
  }
  return "none";
}

FaultType parseFaultType(std::string_view text) {
  std::string lower(text);
  for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (lower == "none") return FaultType::None;
  if (lower == "bpfi") return FaultType::BPFI;
  if (lower == "bpfo") return FaultType::BPFO;
  if (lower == "bsf") return FaultType::BSF;
  if (lower == "ftf") return FaultType::FTF;
  throw Error(ErrorKind::Configuration, "unknown fault type '" + std::string(text) + "'");
}

PeakHit peakAmplitudeNear(const Spectrum& spectrum, double target, double tolerance) {
  if (!(tolerance > 0.0)) {
    throw Error(ErrorKind::Configuration, "peak search tolerance must be > 0");
  }
  if (!(target > 0.0) || spectrum.size() == 0) {
    throw Error(ErrorKind::Configuration, "peak search target must be > 0");
  }
  const double lo = target * (1.0 - tolerance);
  const double hi = target * (1.0 + tolerance);
  const auto& f = spectrum.frequencies;
  const auto& a = spectrum.amplitudes;
  const auto first = static_cast<std::size_t>(std::lower_bound(f.begin(), f.end(), lo) - f.begin());
  const auto last = static_cast<std::size_t>(std::upper_bound(f.begin(), f.end(), hi) - f.begin());
  if (first >= last) {
    throw Error(ErrorKind::Configuration,
                "empty search window around " + std::to_string(target) + " Hz");
  }

  const std::size_t n = a.size();
  bool found = false;
  PeakHit best;
  for (std::size_t i = first; i < last; ++i) {
    const double left = i > 0 ? a[i - 1] : -std::numeric_limits<double>::infinity();
    const double right = i + 1 < n ? a[i + 1] : -std::numeric_limits<double>::infinity();
    if (a[i] > left && a[i] >= right && (!found || a[i] > best.amplitude)) {
      best = {a[i], f[i]};
      found = true;
    }
  }
  if (found) return best;

  best = {a[first], f[first]};
  for (std::size_t i = first + 1; i < last; ++i) {
    const bool higher = a[i] > best.amplitude;
    const bool closer = a[i] == best.amplitude &&
                        std::abs(f[i] - target) < std::abs(best.frequency - target);
    if (higher || closer) best = {a[i], f[i]};
  }
  return best;
}

std::array<DefectTarget, 3> detectionTargets(const FaultFrequencies& f) {
  return {DefectTarget{FaultType::BPFI, f.bpfi}, DefectTarget{FaultType::BPFO, f.bpfo},
          DefectTarget{FaultType::BSF, 2.0 * f.bsf}};
}

std::vector<TargetReading> readEnvelopeTargets(std::span<const double> x, double samplingRate,
                                               std::span<const DefectTarget> targets,
                                               const MetaParameters& meta, double tolerance) {
  std::vector<TargetReading> readings;
  readings.reserve(targets.size());
  const Spectrum raw = squaredEnvelopeSpectrum(x, samplingRate);
  for (const auto& t : targets) {
    TargetReading r;
    r.target = t;
    r.rawAmplitude = peakAmplitudeNear(raw, t.frequency, tolerance).amplitude;
    readings.push_back(std::move(r));
  }

  const auto decomposition =
      waveletDecompose(x, samplingRate, meta.motherWavelet, meta.nOfDecompLevels);
  for (std::size_t level = 0; level < decomposition.details.size(); ++level) {
    const Spectrum s = squaredEnvelopeSpectrum(decomposition.details[level], samplingRate);
    for (auto& r : readings) {
      const double amp = peakAmplitudeNear(s, r.target.frequency, tolerance).amplitude;
      r.levelAmplitudes.push_back(amp);
      if (r.waveletLevel == 0 || amp > r.waveletAmplitude) {
        r.waveletAmplitude = amp;
        r.waveletLevel = static_cast<int>(level) + 1;
      }
    }
  }
  return readings;
}

double baselineMaximum(const VibrationRecord& record) {
  const auto s = squaredEnvelopeSpectrum(record);
  return *std::max_element(s.amplitudes.begin(), s.amplitudes.end());
}

double alarmFromBaselineMaxima(std::span<const double> maxima, double multiplier) {
  if (maxima.empty()) {
    throw Error(ErrorKind::Configuration, "steady-state baseline holds no records");
  }
  double sum = 0.0;
  for (double m : maxima) sum += m;
  return multiplier * sum / static_cast<double>(maxima.size());
}

double steadyStateAlarmLevel(std::span<const VibrationRecord> baseline,
                             const MetaParameters& meta) {
  std::vector<double> maxima;
  maxima.reserve(baseline.size());
  for (const auto& r : baseline) maxima.push_back(baselineMaximum(r));
  return alarmFromBaselineMaxima(maxima, meta.alarmLevelFault);
}

FaultStatus detectFault(const VibrationRecord& record, const FaultFrequencies& faultFreqs,
                        const MetaParameters& meta, double alarmLevel, double tolerance) {
  if (!(alarmLevel > 0.0)) {
    throw Error(ErrorKind::Configuration, "alarm level must be > 0");
  }
  const auto targets = detectionTargets(faultFreqs);
  FaultStatus status;
  status.alarmLevel = alarmLevel;
  status.detectionTime = record.timestamp();
  status.readings = readEnvelopeTargets(record.samples(), record.samplingRate(), targets, meta,
                                        tolerance);

  // Readings are in tie-break order, so strict comparisons keep the earlier
  // type on equal ratios.
  double bestRatio = -1.0;
  double bestAmplitude = 0.0;
  for (const auto& r : status.readings) {
    const double amp = r.amplitude();
    status.detectedAmplitude = std::max(status.detectedAmplitude, amp);
    if (amp > alarmLevel && amp / alarmLevel > bestRatio) {
      bestRatio = amp / alarmLevel;
      bestAmplitude = amp;
      status.faultType = r.target.type;
    }
  }
  status.isFaulty = status.faultType != FaultType::None;
  if (status.isFaulty) status.detectedAmplitude = bestAmplitude;
  return status;
}

PathAlarms steadyStatePathAlarms(std::span<const VibrationRecord> baseline,
                                 const MetaParameters& meta) {
  if (baseline.empty()) {
    throw Error(ErrorKind::Configuration, "steady-state baseline holds no records");
  }
  auto maxOf = [](const Spectrum& s) {
    return *std::max_element(s.amplitudes.begin(), s.amplitudes.end());
  };
  std::vector<double> raw;
  std::vector<std::vector<double>> perLevel(static_cast<std::size_t>(meta.nOfDecompLevels));
  for (const auto& r : baseline) {
    raw.push_back(baselineMaximum(r));
    const auto d = waveletDecompose(r, meta.motherWavelet, meta.nOfDecompLevels);
    for (std::size_t l = 0; l < d.details.size(); ++l) {
      perLevel[l].push_back(maxOf(squaredEnvelopeSpectrum(d.details[l], r.samplingRate())));
    }
  }
  PathAlarms alarms;
  alarms.raw = alarmFromBaselineMaxima(raw, meta.alarmLevelFault);
  for (const auto& m : perLevel) alarms.levels.push_back(alarmFromBaselineMaxima(m, meta.alarmLevelFault));
  return alarms;
}

PathVerdict judgePaths(std::span<const TargetReading> readings, const PathAlarms& alarms) {
  PathVerdict v;
  double rawBest = 1.0;
  double waveletBest = 1.0;
  for (const auto& r : readings) {
    const double rawRatio = r.rawAmplitude / alarms.raw;
    if (rawRatio > rawBest) {
      rawBest = rawRatio;
      v.rawFired = true;
      v.rawType = r.target.type;
    }
    if (r.levelAmplitudes.size() != alarms.levels.size()) {
      throw Error(ErrorKind::Configuration, "reading has " +
                                                std::to_string(r.levelAmplitudes.size()) +
                                                " levels, alarms have " +
                                                std::to_string(alarms.levels.size()));
    }
    for (std::size_t l = 0; l < alarms.levels.size(); ++l) {
      const double ratio = r.levelAmplitudes[l] / alarms.levels[l];
      if (ratio > waveletBest) {
        waveletBest = ratio;
        v.waveletFired = true;
        v.waveletType = r.target.type;
        v.waveletLevel = static_cast<int>(l) + 1;
      }
    }
  }
  return v;
}

}  // namespace tribo
