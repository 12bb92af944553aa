#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tribo/time.hpp"

namespace tribo {

/// Rolling-bearing geometry. Lengths in millimetres, angle in degrees.
struct BearingGeometry {
  int rollerCount = 0;  // per row
  double rollerDiameter = 0.0;
  double pitchDiameter = 0.0;
  double contactAngle = 0.0;

  /// Throws Error(InvalidInput) when the geometry is not physical.
  void validate() const;
};

/// Characteristic defect frequencies in Hz. `bsf` is the spin frequency of a
/// single roller; a roller defect shows up at 2 * bsf.
struct FaultFrequencies {
  double bpfi = 0.0;
  double bpfo = 0.0;
  double bsf = 0.0;
  double ftf = 0.0;
  double shaftRate = 0.0;
};

FaultFrequencies computeFaultFrequencies(const BearingGeometry& geometry, double shaftRate);

/// Geometry of the Rexnord ZA-2115 double-row bearing used in the IMS
/// run-to-failure rig (public dataset documentation).
BearingGeometry rexnordZA2115();

/// One fixed-rate vibration snapshot from a single channel.
class VibrationRecord {
 public:
  VibrationRecord(Instant timestamp, double samplingRate, std::vector<double> samples,
                  std::string channelId = "ch1");

  Instant timestamp() const noexcept { return timestamp_; }
  double samplingRate() const noexcept { return samplingRate_; }
  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const std::string& channelId() const noexcept { return channelId_; }

 private:
  Instant timestamp_;
  double samplingRate_;
  std::vector<double> samples_;
  std::string channelId_;
};

/// Exponential degradation model Deg(t) = c * exp(b t) with t in hours.
struct DegradationModel {
  double c = 1.0;
  double b = 0.0;
  double sigma2 = 1.0;  // residual variance on the data scale

  double operator()(double hours) const;
};

struct GoodnessWeights {
  double corr = 1.0 / 3.0;
  double mon = 1.0 / 3.0;
  double rob = 1.0 / 3.0;

  /// Rescaled to sum to one. Throws Error(Configuration) for negative or
  /// all-zero weights.
  GoodnessWeights normalized() const;
};

/// The seven user-facing knobs of the bearing plug-in.
struct MetaParameters {
  /// Multiplier applied to the mean steady-state envelope maximum.
  double alarmLevelFault = 3.0;
  std::string motherWavelet = "bior6.8";
  int nOfDecompLevels = 12;
  GoodnessWeights degParamWeights{};
  /// Failure threshold in degradation-feature units.
  double alarmLevelRUL = 3.5;
  /// Empty: derived at run time by least squares.
  std::optional<DegradationModel> rulModelParameters{};
  int nOfSimulations = 10000;

  static constexpr std::size_t kCount = 7;

  /// Checks ranges and normalizes the weights.
  MetaParameters validated() const;

  /// Throws Error(Configuration) if the level count does not fit the signal.
  void checkDecompositionFits(std::size_t sampleCount) const;
};

struct AssetRecord {
  std::string assetId;
  BearingGeometry geometry;
  double shaftRate = 0.0;
  MetaParameters meta{};
  /// Column of a multi-channel measurement file that observes this asset.
  std::size_t channel = 0;

  void validate() const;
  FaultFrequencies faultFrequencies() const {
    return computeFaultFrequencies(geometry, shaftRate);
  }
};

}  // namespace tribo
