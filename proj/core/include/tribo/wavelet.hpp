#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tribo {

/// Analysis and synthesis filters of a biorthogonal wavelet, laid out with
/// the same length and zero padding as the PyWavelets tables so that
/// coefficient counts agree with that library.
struct WaveletFilters {
  std::string id;
  std::vector<double> decLow;
  std::vector<double> decHigh;
  std::vector<double> recLow;
  std::vector<double> recHigh;

  std::size_t length() const noexcept { return decLow.size(); }
};

/// Throws Error(Configuration) for unknown ids.
const WaveletFilters& waveletFilters(std::string_view id);
std::vector<std::string> supportedWavelets();

struct DwtLevel {
  std::vector<double> approximation;
  std::vector<double> detail;
};

/// Single-level DWT with half-point symmetric extension. Output length is
/// floor((n + L - 1) / 2) for filter length L.
DwtLevel dwt(std::span<const double> x, const WaveletFilters& w);

/// Single-level inverse. An empty span stands for all-zero coefficients.
/// The result is truncated to `outputLength`.
std::vector<double> idwt(std::span<const double> approximation, std::span<const double> detail,
                         const WaveletFilters& w, std::size_t outputLength);

/// Multilevel coefficients, `details[0]` is level 1 (finest).
struct WaveletCoefficients {
  std::vector<std::vector<double>> details;
  std::vector<double> approximation;
  /// signalLengths[j] is the length of the input to level j + 1.
  std::vector<std::size_t> signalLengths;
};

WaveletCoefficients wavedec(std::span<const double> x, const WaveletFilters& w, int levels);

/// Full-length signal synthesized from the detail coefficients of one level
/// with all other coefficients set to zero. `level` is 1-based.
std::vector<double> reconstructDetail(const WaveletCoefficients& c, const WaveletFilters& w,
                                      int level);
std::vector<double> reconstructApproximation(const WaveletCoefficients& c,
                                             const WaveletFilters& w);

}  // namespace tribo
