#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tribo/core.hpp"
#include "tribo/detect.hpp"
#include "tribo/dsp.hpp"

namespace tribo {

inline constexpr double kImsSamplingRate = 20480.0;
inline constexpr std::size_t kImsSamplesPerFile = 20480;

struct ImsReadOptions {
  double samplingRate = kImsSamplingRate;
  std::size_t expectedSamples = kImsSamplesPerFile;
};

/// IMS file names encode the acquisition time as `YYYY.MM.DD.hh.mm.ss`.
Instant parseImsTimestamp(std::string_view fileName);
std::string formatImsTimestamp(Instant t);

/// Reads one whitespace-delimited IMS snapshot: one record per column,
/// channel ids `ch1` ... `chN`. Throws ParseError (with the line number for
/// malformed rows) or Error(Io).
std::vector<VibrationRecord> readIMSRecord(const std::filesystem::path& file,
                                           const ImsReadOptions& options = {});

struct RunFile {
  std::filesystem::path path;
  Instant timestamp{};
};

struct RunDirectory {
  std::filesystem::path path;
  std::vector<RunFile> records;  // timestamp order
  std::size_t channelsPerFile = 0;
  std::size_t samplesPerFile = 0;
};

/// Lists every file whose name parses as an IMS timestamp, sorted by time.
/// Throws Error(Io) when the directory is missing or holds no records.
RunDirectory scanRunDirectory(const std::filesystem::path& dir,
                              const ImsReadOptions& options = {});

/// Writes channels as tab-separated columns with four decimals, the layout
/// of the public IMS files. All channels must have equal length.
void writeIMSRecord(const std::filesystem::path& file,
                    std::span<const std::vector<double>> channels);

struct SyntheticFaultSpec {
  double faultFrequency = 236.0;
  double resonanceFrequency = 4000.0;
  double impulseDecay = 800.0;  // 1/s
  double impulseAmplitude = 1.0;
  double noiseStd = 0.0;
  double slip = 0.0;  // relative jitter of the impulse spacing
  double durationSeconds = 1.0;
  double samplingRate = kImsSamplingRate;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Periodic impulses ringing down at the resonance plus Gaussian noise.
VibrationRecord synthesizeFaultSignal(const SyntheticFaultSpec& spec, Instant timestamp = {},
                                      std::string channelId = "ch1");

/// Adds Gaussian noise restricted to [lowHz, highHz] with the given standard
/// deviation (band-limited by zeroing FFT bins outside the band).
void addBandLimitedNoise(std::vector<double>& x, double samplingRate, double lowHz,
                         double highHz, double stdDev, std::uint64_t seed);

/// A multi-channel run-to-failure recording. Records before `faultOnset`
/// are noise only; from the onset on, `faultyChannel` carries impulses whose
/// amplitude grows as onsetAmplitude * exp(growthPerHour * hours since onset).
struct SyntheticRunSpec {
  std::size_t records = 120;
  std::size_t faultOnset = 60;  // == records for a healthy run
  FaultType faultType = FaultType::BPFO;
  AssetRecord asset{"synthetic-bearing", rexnordZA2115(), 2000.0 / 60.0, {}, 0};
  std::size_t channels = 4;
  double cadenceMinutes = 10.0;
  Instant start = makeInstant(2004, 2, 12, 10, 32, 39);
  double noiseStd = 0.05;
  double onsetAmplitude = 0.25;
  double growthPerHour = 0.15;
  double resonanceFrequency = 4000.0;
  double impulseDecay = 800.0;
  double slip = 0.0;
  double durationSeconds = 1.0;
  double samplingRate = kImsSamplingRate;
  std::uint64_t seed = 1;

  double faultFrequency() const;
  Instant timestampOf(std::size_t index) const;
};

/// All channels of record `index`; deterministic in (spec.seed, index).
std::vector<VibrationRecord> synthesizeRunRecord(const SyntheticRunSpec& spec, std::size_t index);

/// Writes the run as IMS files into `dir` (created if needed) plus an
/// `asset.cfg` describing the bearing. Returns the written file paths.
std::vector<std::filesystem::path> writeSyntheticRun(const SyntheticRunSpec& spec,
                                                     const std::filesystem::path& dir);

/// Comma-separated, header `timestamp,<feature names 1-10>`, values with 17
/// significant digits, empty cells for absent features.
std::string featureTableHeader();
void writeFeatureTable(std::span<const FeatureVector> vectors, const std::filesystem::path& file);
std::vector<FeatureVector> readFeatureTable(const std::filesystem::path& file);

/// 17 significant digits; parses back to exactly `v`.
std::string formatDouble17(double v);

}  // namespace tribo
