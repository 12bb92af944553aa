#include <algorithm>
#include <cmath>

#include "tribo/detect.hpp"
#include "tribo/dsp.hpp"
#include "tribo/error.hpp"

namespace tribo {

std::string_view featureName(int id) {
  static constexpr std::string_view names[kFeatureCount] = {
      "rms",
      "crest_factor",
      "shape_factor",
      "impulse_factor",
      "shannon_entropy",
      "log_energy_entropy",
      "skewness",
      "kurtosis",
      "envelope_defect_amplitude",
      "wavelet_defect_amplitude",
  };
  if (id < 1 || id > kFeatureCount) {
    throw Error(ErrorKind::InvalidInput, "feature id out of range: " + std::to_string(id));
  }
  return names[id - 1];
}

std::array<double, 8> timeDomainFeatures(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorKind::InvalidInput, "empty signal");
  const double n = static_cast<double>(x.size());

  double energy = 0.0;
  double sumAbs = 0.0;
  double peak = 0.0;
  double sum = 0.0;
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidInput, "non-finite sample");
    energy += v * v;
    sumAbs += std::abs(v);
    peak = std::max(peak, std::abs(v));
    sum += v;
  }
  if (energy == 0.0) {
    throw Error(ErrorKind::DegenerateSignal, "all-zero signal has no shape or impulse factor");
  }

  const double rms = std::sqrt(energy / n);
  const double meanAbs = sumAbs / n;
  const double mean = sum / n;

  double shannon = 0.0;
  double logEnergy = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : x) {
    const double sq = v * v;
    if (sq > 0.0) {
      const double p = sq / energy;
      shannon -= p * std::log(p);
    }
    logEnergy += std::log(sq + kLogEnergyGuard);
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  // A constant signal has no spread; report zero rather than 0/0.
  const double skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  const double kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;

  return {rms, peak / rms, rms / meanAbs, peak / meanAbs, shannon, logEnergy, skewness, kurtosis};
}

FeatureVector timeDomainFeatures(const VibrationRecord& record) {
  const auto values = timeDomainFeatures(record.samples());
  FeatureVector fv;
  fv.timestamp = record.timestamp();
  for (int id = 1; id <= 8; ++id) fv.set(id, values[static_cast<std::size_t>(id - 1)]);
  return fv;
}

FeatureVector extractAllFeatures(const VibrationRecord& record, double faultFrequency,
                                 const MetaParameters& meta, double tolerance) {
  FeatureVector fv = timeDomainFeatures(record);
  const DefectTarget target{FaultType::None, faultFrequency};
  const auto readings = readEnvelopeTargets(record.samples(), record.samplingRate(),
                                            std::span(&target, 1), meta, tolerance);
  fv.set(Feature::EnvelopeDefectAmplitude, readings.front().rawAmplitude);
  fv.set(Feature::WaveletDefectAmplitude, readings.front().waveletAmplitude);
  return fv;
}

}  // namespace tribo
