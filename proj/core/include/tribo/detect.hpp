#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "tribo/core.hpp"
#include "tribo/dsp.hpp"

namespace tribo {

enum class FaultType { None, BPFI, BPFO, BSF, FTF };

std::string_view toString(FaultType type) noexcept;
/// Accepts the names produced by toString, case-insensitively.
FaultType parseFaultType(std::string_view text);

struct PeakHit {
  double amplitude = 0.0;
  double frequency = 0.0;
};

/// Largest local maximum within [target(1 - tol), target(1 + tol)]; falls back
/// to the largest bin in the window (ties resolved towards the target) when
/// the window holds no local maximum. Throws Error(Configuration) if the window
/// contains no bins.
PeakHit peakAmplitudeNear(const Spectrum& spectrum, double target, double tolerance);

struct DefectTarget {
  FaultType type = FaultType::None;
  double frequency = 0.0;
};

/// The first-harmonic search targets in tie-break order: BPFI, BPFO, 2 * BSF.
std::array<DefectTarget, 3> detectionTargets(const FaultFrequencies& f);

/// Envelope-spectrum amplitude of one defect target on the raw signal and on
/// each reconstructed wavelet detail signal.
struct TargetReading {
  DefectTarget target;
  double rawAmplitude = 0.0;
  std::vector<double> levelAmplitudes;  // level 1 first
  double waveletAmplitude = 0.0;        // max over levels
  int waveletLevel = 0;                 // argmax, 1-based; lowest level on ties

  double amplitude() const noexcept {
    return rawAmplitude > waveletAmplitude ? rawAmplitude : waveletAmplitude;
  }
};

std::vector<TargetReading> readEnvelopeTargets(std::span<const double> x, double samplingRate,
                                               std::span<const DefectTarget> targets,
                                               const MetaParameters& meta,
                                               double tolerance = kDefaultSearchTolerance);

struct FaultStatus {
  bool isFaulty = false;
  FaultType faultType = FaultType::None;
  double detectedAmplitude = 0.0;
  double alarmLevel = 0.0;
  Instant detectionTime{};
  std::vector<TargetReading> readings;
};

/// Maximum amplitude of the raw squared envelope spectrum.
double baselineMaximum(const VibrationRecord& record);

/// multiplier * mean(maxima). Throws Error(Configuration) when empty.
double alarmFromBaselineMaxima(std::span<const double> maxima, double multiplier);

/// Alarm level from healthy records: meta.alarmLevelFault (3 by default)
/// times the mean baseline maximum.
double steadyStateAlarmLevel(std::span<const VibrationRecord> baseline,
                             const MetaParameters& meta);

FaultStatus detectFault(const VibrationRecord& record, const FaultFrequencies& faultFreqs,
                        const MetaParameters& meta, double alarmLevel,
                        double tolerance = kDefaultSearchTolerance);

/// Separate alarm levels for the raw envelope spectrum and for the envelope
/// spectrum of every reconstructed detail level (level 1 first), each
/// meta.alarmLevelFault times the mean of its steady-state maxima.
struct PathAlarms {
  double raw = 0.0;
  std::vector<double> levels;
};

PathAlarms steadyStatePathAlarms(std::span<const VibrationRecord> baseline,
                                 const MetaParameters& meta);

struct PathVerdict {
  bool rawFired = false;
  FaultType rawType = FaultType::None;
  bool waveletFired = false;
  FaultType waveletType = FaultType::None;
  int waveletLevel = 0;  // level with the largest amplitude-to-alarm ratio
};

/// Judges the raw path and the wavelet path separately, each against its own
/// alarms. On each path the target with the largest ratio wins. Throws
/// Error(Configuration) when a reading and the alarms disagree on the level
/// count.
PathVerdict judgePaths(std::span<const TargetReading> readings, const PathAlarms& alarms);

}  // namespace tribo
