#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "fft.hpp"
#include "tribo/config.hpp"
#include "tribo/error.hpp"
#include "tribo/io.hpp"

namespace tribo {

namespace fs = std::filesystem;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(seed ^ splitmix64(a)) ^ splitmix64(b + 0x51ED2701ULL));
}

}  // namespace

void SyntheticFaultSpec::validate() const {
  const double nyquist = samplingRate / 2.0;
  if (!(samplingRate > 0.0)) throw Error(ErrorKind::InvalidInput, "samplingRate must be > 0");
  if (!(faultFrequency > 0.0 && faultFrequency < nyquist)) {
    throw Error(ErrorKind::InvalidInput, "faultFrequency must lie in (0, fs/2)");
  }
  if (!(resonanceFrequency > 0.0 && resonanceFrequency < nyquist)) {
    throw Error(ErrorKind::InvalidInput, "resonanceFrequency must lie in (0, fs/2)");
  }
  if (!(impulseDecay > 0.0)) throw Error(ErrorKind::InvalidInput, "impulseDecay must be > 0");
  if (noiseStd < 0.0) throw Error(ErrorKind::InvalidInput, "noiseStd must be >= 0");
  if (slip < 0.0 || slip >= 1.0) throw Error(ErrorKind::InvalidInput, "slip must lie in [0, 1)");
  if (!(durationSeconds > 0.0)) throw Error(ErrorKind::InvalidInput, "duration must be > 0");
}

VibrationRecord synthesizeFaultSignal(const SyntheticFaultSpec& spec, Instant timestamp,
                                      std::string channelId) {
  spec.validate();
  const auto n = static_cast<std::size_t>(std::llround(spec.durationSeconds * spec.samplingRate));
  if (n == 0) throw Error(ErrorKind::InvalidInput, "synthetic record would be empty");
  std::vector<double> x(n, 0.0);

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  const double period = 1.0 / spec.faultFrequency;
  const double ringLength = std::log(1e6) / spec.impulseDecay;
  const double omega = 2.0 * std::numbers::pi * spec.resonanceFrequency;
  const double duration = static_cast<double>(n) / spec.samplingRate;

  if (spec.impulseAmplitude != 0.0) {
    double t = unit(rng) * period;
    while (t < duration) {
      const auto first = static_cast<std::size_t>(std::ceil(t * spec.samplingRate));
      const auto last = std::min(
          n, static_cast<std::size_t>(std::ceil((t + ringLength) * spec.samplingRate)));
      for (std::size_t i = first; i < last; ++i) {
        const double tau = static_cast<double>(i) / spec.samplingRate - t;
        x[i] += spec.impulseAmplitude * std::exp(-spec.impulseDecay * tau) * std::sin(omega * tau);
      }
      const double jitter = spec.slip > 0.0 ? spec.slip * (2.0 * unit(rng) - 1.0) : 0.0;
      t += period * (1.0 + jitter);
    }
  }
  if (spec.noiseStd > 0.0) {
    for (auto& v : x) v += spec.noiseStd * normal(rng);
  }
  return VibrationRecord(timestamp, spec.samplingRate, std::move(x), std::move(channelId));
}

void addBandLimitedNoise(std::vector<double>& x, double samplingRate, double lowHz,
                         double highHz, double stdDev, std::uint64_t seed) {
  if (x.size() < 4 || !(highHz > lowHz) || stdDev <= 0.0) return;
  const std::size_t n = x.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> white(n);
  for (auto& v : white) v = normal(rng);

  const auto half = fft::forwardReal(white);
  std::vector<fft::Complex> full(n, fft::Complex{});
  const double resolution = samplingRate / static_cast<double>(n);
  for (std::size_t k = 0; k < half.size(); ++k) {
    const double f = static_cast<double>(k) * resolution;
    if (f < lowHz || f > highHz) continue;
    full[k] = half[k];
    if (k != 0 && k != n - k) full[n - k] = std::conj(half[k]);
  }
  const auto band = fft::inverse(full);
  double energy = 0.0;
  for (const auto& v : band) energy += v.real() * v.real();
  const double rms = std::sqrt(energy / static_cast<double>(n));
  if (rms == 0.0) return;
  for (std::size_t i = 0; i < n; ++i) x[i] += stdDev * band[i].real() / rms;
}

double SyntheticRunSpec::faultFrequency() const {
  const auto f = asset.faultFrequencies();
  switch (faultType) {
    case FaultType::BPFI: return f.bpfi;
    case FaultType::BPFO: return f.bpfo;
    case FaultType::BSF: return 2.0 * f.bsf;
    case FaultType::FTF: return f.ftf;
    case FaultType::None: break;
  }
  return f.bpfo;
}

Instant SyntheticRunSpec::timestampOf(std::size_t index) const {
  return addHours(start, static_cast<double>(index) * cadenceMinutes / 60.0);
}

std::vector<VibrationRecord> synthesizeRunRecord(const SyntheticRunSpec& spec, std::size_t index) {
  if (index >= spec.records) throw Error(ErrorKind::InvalidInput, "record index out of range");
  if (spec.asset.channel >= spec.channels) {
    throw Error(ErrorKind::InvalidInput, "faulty channel exceeds channel count");
  }
  const bool faulty = spec.faultType != FaultType::None && index >= spec.faultOnset;
  const double hoursSinceOnset =
      faulty ? static_cast<double>(index - spec.faultOnset) * spec.cadenceMinutes / 60.0 : 0.0;

  std::vector<VibrationRecord> out;
  out.reserve(spec.channels);
  for (std::size_t ch = 0; ch < spec.channels; ++ch) {
    SyntheticFaultSpec s;
    s.faultFrequency = spec.faultFrequency();
    s.resonanceFrequency = spec.resonanceFrequency;
    s.impulseDecay = spec.impulseDecay;
    s.noiseStd = spec.noiseStd;
    s.slip = spec.slip;
    s.durationSeconds = spec.durationSeconds;
    s.samplingRate = spec.samplingRate;
    s.seed = deriveSeed(spec.seed, index, ch);
    s.impulseAmplitude = (faulty && ch == spec.asset.channel)
                             ? spec.onsetAmplitude * std::exp(spec.growthPerHour * hoursSinceOnset)
                             : 0.0;
    out.push_back(synthesizeFaultSignal(s, spec.timestampOf(index), "ch" + std::to_string(ch + 1)));
  }
  return out;
}

std::vector<fs::path> writeSyntheticRun(const SyntheticRunSpec& spec, const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<fs::path> written;
  written.reserve(spec.records);
  for (std::size_t i = 0; i < spec.records; ++i) {
    const auto records = synthesizeRunRecord(spec, i);
    std::vector<std::vector<double>> columns;
    columns.reserve(records.size());
    for (const auto& r : records) columns.emplace_back(r.samples().begin(), r.samples().end());
    const fs::path file = dir / formatImsTimestamp(spec.timestampOf(i));
    writeIMSRecord(file, columns);
    written.push_back(file);
  }
  std::ofstream cfg(dir / "asset.cfg");
  if (!cfg) throw Error(ErrorKind::Io, "cannot write " + (dir / "asset.cfg").string());
  cfg << formatAssetConfig(spec.asset);
  return written;
}

}  // namespace tribo
