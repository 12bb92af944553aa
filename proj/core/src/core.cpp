#include "tribo/core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tribo/error.hpp"

namespace tribo {

std::string_view toString(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::DegenerateSignal: return "degenerate-signal";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Selection: return "selection";
    case ErrorKind::FitDomain: return "fit-domain";
    case ErrorKind::Sampling: return "sampling";
    case ErrorKind::LowConfidence: return "low-confidence";
    case ErrorKind::Registration: return "registration";
    case ErrorKind::Lookup: return "lookup";
    case ErrorKind::Phase: return "phase";
  }
  return "unknown";
}

void BearingGeometry::validate() const {
  if (rollerCount < 1) {
    throw Error(ErrorKind::InvalidInput, "rollerCount must be >= 1");
  }
  if (!(rollerDiameter > 0.0) || !std::isfinite(rollerDiameter)) {
    throw Error(ErrorKind::InvalidInput, "rollerDiameter must be > 0");
  }
  if (!(pitchDiameter > rollerDiameter) || !std::isfinite(pitchDiameter)) {
    throw Error(ErrorKind::InvalidInput, "pitchDiameter must exceed rollerDiameter");
  }
  if (!(contactAngle >= 0.0 && contactAngle < 90.0)) {
    throw Error(ErrorKind::InvalidInput, "contactAngle must lie in [0, 90) degrees");
  }
}

FaultFrequencies computeFaultFrequencies(const BearingGeometry& geometry, double shaftRate) {
  geometry.validate();
  if (!(shaftRate > 0.0) || !std::isfinite(shaftRate)) {
    throw Error(ErrorKind::InvalidInput, "shaftRate must be > 0");
  }
  const double n = geometry.rollerCount;
  const double ratio = geometry.rollerDiameter / geometry.pitchDiameter *
                       std::cos(geometry.contactAngle * std::numbers::pi / 180.0);
  const double half = 0.5 * n * shaftRate;

  FaultFrequencies f;
  f.shaftRate = shaftRate;
  const double total = n * shaftRate;
  // BPFO is rounded onto the spacing of n * f_r, which makes the difference
  // below exact and bpfi + bpfo == n * f_r hold bit for bit.
  const double grid = std::nextafter(total, HUGE_VAL) - total;
  f.bpfo = std::round(half * (1.0 - ratio) / grid) * grid;
  f.bpfi = total - f.bpfo;
  f.bsf = geometry.pitchDiameter / (2.0 * geometry.rollerDiameter) * shaftRate *
          (1.0 - ratio * ratio);
  f.ftf = 0.5 * shaftRate * (1.0 - ratio);
  return f;
}

BearingGeometry rexnordZA2115() {
  return BearingGeometry{16, 8.4, 71.5, 15.17};
}

VibrationRecord::VibrationRecord(Instant timestamp, double samplingRate,
                                 std::vector<double> samples, std::string channelId)
    : timestamp_(timestamp),
      samplingRate_(samplingRate),
      samples_(std::move(samples)),
      channelId_(std::move(channelId)) {
  if (samples_.empty()) {
    throw Error(ErrorKind::InvalidInput, "vibration record has no samples");
  }
  if (!(samplingRate_ > 0.0) || !std::isfinite(samplingRate_)) {
    throw Error(ErrorKind::InvalidInput, "samplingRate must be > 0");
  }
}

double DegradationModel::operator()(double hours) const {
  return c * std::exp(b * hours);
}

GoodnessWeights GoodnessWeights::normalized() const {
  if (corr < 0.0 || mon < 0.0 || rob < 0.0 || !std::isfinite(corr + mon + rob)) {
    throw Error(ErrorKind::Configuration, "degParamWeights must be nonnegative");
  }
  const double sum = corr + mon + rob;
  if (!(sum > 0.0)) {
    throw Error(ErrorKind::Configuration, "degParamWeights must not all be zero");
  }
  return {corr / sum, mon / sum, rob / sum};
}

MetaParameters MetaParameters::validated() const {
  MetaParameters m = *this;
  if (!(m.alarmLevelFault > 0.0)) {
    throw Error(ErrorKind::Configuration, "alarmLevelFault must be > 0");
  }
  if (m.motherWavelet.empty()) {
    throw Error(ErrorKind::Configuration, "motherWavelet must be set");
  }
  if (m.nOfDecompLevels < 1) {
    throw Error(ErrorKind::Configuration, "nOfDecompLevels must be >= 1");
  }
  if (!(m.alarmLevelRUL > 0.0)) {
    throw Error(ErrorKind::Configuration, "alarmLevelRUL must be > 0");
  }
  if (m.rulModelParameters) {
    const auto& p = *m.rulModelParameters;
    if (!(p.c > 0.0) || !(p.sigma2 > 0.0) || !std::isfinite(p.b)) {
      throw Error(ErrorKind::Configuration,
                  "RULmodelParameters require c > 0, finite b and sigma2 > 0");
    }
  }
  if (m.nOfSimulations < 1) {
    throw Error(ErrorKind::Configuration, "nOfSimulations must be >= 1");
  }
  m.degParamWeights = m.degParamWeights.normalized();
  return m;
}

void MetaParameters::checkDecompositionFits(std::size_t sampleCount) const {
  const int maxLevels = sampleCount < 2 ? 0 : static_cast<int>(std::floor(std::log2(sampleCount)));
  if (nOfDecompLevels < 1 || nOfDecompLevels > maxLevels) {
    throw Error(ErrorKind::Configuration,
                "nOfDecompLevels = " + std::to_string(nOfDecompLevels) +
                    " does not fit a signal of " + std::to_string(sampleCount) +
                    " samples (max " + std::to_string(maxLevels) + ")");
  }
}

void AssetRecord::validate() const {
  if (assetId.empty()) {
    throw Error(ErrorKind::InvalidInput, "assetId must be set");
  }
  geometry.validate();
  if (!(shaftRate > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "shaftRate must be > 0");
  }
}

}  // namespace tribo
