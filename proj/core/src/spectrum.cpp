#include <cmath>

#include "fft.hpp"
#include "tribo/dsp.hpp"
#include "tribo/error.hpp"
#include "tribo/wavelet.hpp"

namespace tribo {

namespace {

Spectrum oneSided(std::span<const fft::Complex> bins, std::size_t n, double samplingRate) {
  Spectrum s;
  s.sampleCount = n;
  s.resolution = samplingRate / static_cast<double>(n);
  const std::size_t count = n / 2 + 1;
  s.frequencies.resize(count);
  s.amplitudes.resize(count);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < count; ++k) {
    const bool unpaired = k == 0 || (n % 2 == 0 && k == n / 2);
    s.frequencies[k] = static_cast<double>(k) * s.resolution;
    s.amplitudes[k] = (unpaired ? 1.0 : 2.0) * scale * std::abs(bins[k]);
  }
  return s;
}

void requireLength(std::span<const double> x, std::size_t minimum, const char* what) {
  if (x.size() < minimum) {
    throw Error(ErrorKind::InvalidInput, std::string(what) + " needs at least " +
                                             std::to_string(minimum) + " samples");
  }
}

}  // namespace

double meanSquareFromSpectrum(const Spectrum& s) {
  double acc = 0.0;
  for (std::size_t k = 0; k < s.amplitudes.size(); ++k) {
    const bool unpaired = k == 0 || (s.sampleCount % 2 == 0 && k == s.sampleCount / 2);
    const double a = s.amplitudes[k];
    acc += unpaired ? a * a : 0.5 * a * a;
  }
  return acc;
}

Spectrum realSpectrum(std::span<const double> x, double samplingRate) {
  requireLength(x, 2, "realSpectrum");
  const auto bins = fft::forwardReal(x);
  return oneSided(bins, x.size(), samplingRate);
}

Spectrum realSpectrum(const VibrationRecord& record) {
  return realSpectrum(record.samples(), record.samplingRate());
}

Spectrum squaredEnvelopeSpectrum(std::span<const double> x, double samplingRate) {
  requireLength(x, 4, "squaredEnvelopeSpectrum");
  const std::size_t n = x.size();
  const auto half = fft::forwardReal(x);

  // Analytic signal: keep DC (and Nyquist for even n), double the positive
  // frequencies, zero the negative ones.
  std::vector<fft::Complex> full(n, fft::Complex{});
  full[0] = half[0];
  const std::size_t positiveEnd = (n % 2 == 0) ? n / 2 : (n + 1) / 2;
  for (std::size_t k = 1; k < positiveEnd; ++k) full[k] = 2.0 * half[k];
  if (n % 2 == 0) full[n / 2] = half[n / 2];
  const auto analytic = fft::inverse(full);

  std::vector<double> envelope(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    envelope[i] = std::norm(analytic[i]);
    mean += envelope[i];
  }
  mean /= static_cast<double>(n);
  for (auto& e : envelope) e -= mean;

  Spectrum s = oneSided(fft::forwardReal(envelope), n, samplingRate);
  s.amplitudes[0] = 0.0;
  return s;
}

Spectrum squaredEnvelopeSpectrum(const VibrationRecord& record) {
  return squaredEnvelopeSpectrum(record.samples(), record.samplingRate());
}

FrequencyBand detailBand(double samplingRate, int level) {
  return {samplingRate / std::ldexp(1.0, level + 1), samplingRate / std::ldexp(1.0, level)};
}

WaveletDecomposition waveletDecompose(std::span<const double> x, double samplingRate,
                                      std::string_view motherWavelet, int levels) {
  const auto& filters = waveletFilters(motherWavelet);
  const int maxLevels = x.size() < 2 ? 0 : static_cast<int>(std::floor(std::log2(x.size())));
  if (levels < 1 || levels > maxLevels) {
    throw Error(ErrorKind::Configuration,
                "cannot decompose " + std::to_string(x.size()) + " samples into " +
                    std::to_string(levels) + " levels (max " + std::to_string(maxLevels) + ")");
  }
  const auto coeffs = wavedec(x, filters, levels);

  WaveletDecomposition d;
  d.motherWavelet = filters.id;
  d.details.reserve(static_cast<std::size_t>(levels));
  for (int level = 1; level <= levels; ++level) {
    d.details.push_back(reconstructDetail(coeffs, filters, level));
    d.bandEdges.push_back(detailBand(samplingRate, level));
  }
  d.approximation = reconstructApproximation(coeffs, filters);
  d.approximationBand = {0.0, samplingRate / std::ldexp(1.0, levels + 1)};
  return d;
}

WaveletDecomposition waveletDecompose(const VibrationRecord& record,
                                      std::string_view motherWavelet, int levels) {
  return waveletDecompose(record.samples(), record.samplingRate(), motherWavelet, levels);
}

}  // namespace tribo
