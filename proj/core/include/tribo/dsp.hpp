#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tribo/core.hpp"

namespace tribo {

/// One-sided amplitude spectrum. A pure tone of amplitude A that sits on a
/// bin shows up with amplitude A.
struct Spectrum {
  std::vector<double> frequencies;
  std::vector<double> amplitudes;
  double resolution = 0.0;
  std::size_t sampleCount = 0;

  std::size_t size() const noexcept { return amplitudes.size(); }
};

/// Mean square of the time signal recovered from the one-sided amplitudes.
double meanSquareFromSpectrum(const Spectrum& s);

Spectrum realSpectrum(std::span<const double> x, double samplingRate);
Spectrum realSpectrum(const VibrationRecord& record);

/// Spectrum of |analytic signal|^2 with the DC bin removed.
Spectrum squaredEnvelopeSpectrum(std::span<const double> x, double samplingRate);
Spectrum squaredEnvelopeSpectrum(const VibrationRecord& record);

struct FrequencyBand {
  double low = 0.0;
  double high = 0.0;
};

/// Per-level reconstructions of a multilevel DWT. `details[0]` is level 1,
/// the highest band.
struct WaveletDecomposition {
  std::string motherWavelet;
  std::vector<std::vector<double>> details;
  std::vector<double> approximation;
  std::vector<FrequencyBand> bandEdges;
  FrequencyBand approximationBand;
};

/// Nominal band of detail level `level` (1-based): [fs / 2^(level+1), fs / 2^level].
FrequencyBand detailBand(double samplingRate, int level);

WaveletDecomposition waveletDecompose(std::span<const double> x, double samplingRate,
                                      std::string_view motherWavelet, int levels);
WaveletDecomposition waveletDecompose(const VibrationRecord& record,
                                      std::string_view motherWavelet, int levels);

/// Feature ids follow the vibration feature catalogue, 1-based.
enum class Feature : int {
  Rms = 1,
  CrestFactor,
  ShapeFactor,
  ImpulseFactor,
  ShannonEntropy,
  LogEnergyEntropy,
  Skewness,
  Kurtosis,
  EnvelopeDefectAmplitude,
  WaveletDefectAmplitude,
};
inline constexpr int kFeatureCount = 10;

std::string_view featureName(int id);

struct FeatureVector {
  Instant timestamp{};
  std::array<std::optional<double>, kFeatureCount> values{};

  std::optional<double> get(int id) const { return values.at(static_cast<std::size_t>(id - 1)); }
  std::optional<double> get(Feature f) const { return get(static_cast<int>(f)); }
  void set(int id, double v) { values.at(static_cast<std::size_t>(id - 1)) = v; }
  void set(Feature f, double v) { set(static_cast<int>(f), v); }

  bool operator==(const FeatureVector&) const = default;
};

/// Log-energy guard against log(0).
inline constexpr double kLogEnergyGuard = 1e-12;

/// Features 1-8. Throws Error(DegenerateSignal) for an all-zero signal.
FeatureVector timeDomainFeatures(const VibrationRecord& record);
std::array<double, 8> timeDomainFeatures(std::span<const double> x);

/// Default half-width of the peak search window as a fraction of the target.
inline constexpr double kDefaultSearchTolerance = 0.02;

/// Features 1-10. Feature 9 is the envelope-spectrum amplitude at
/// `faultFrequency`; feature 10 is the largest such amplitude over the
/// reconstructed wavelet detail signals.
FeatureVector extractAllFeatures(const VibrationRecord& record, double faultFrequency,
                                 const MetaParameters& meta,
                                 double tolerance = kDefaultSearchTolerance);

}  // namespace tribo
