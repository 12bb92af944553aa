#include "tribo/wavelet.hpp"

#include <algorithm>

#include "tribo/error.hpp"

namespace tribo {

namespace {

// CDF spline biorthogonal 6.8.
WaveletFilters makeBior68() {
  WaveletFilters w;
  w.id = "bior6.8";
  w.decLow = {0.0,
              0.0019088317364812906,
              -0.0019142861290887667,
              -0.016990639867602342,
              0.01193456527972926,
              0.04973290349094079,
              -0.07726317316720414,
              -0.09405920349573646,
              0.4207962846098268,
              0.8259229974584023,
              0.4207962846098268,
              -0.09405920349573646,
              -0.07726317316720414,
              0.04973290349094079,
              0.01193456527972926,
              -0.016990639867602342,
              -0.0019142861290887667,
              0.0019088317364812906};
  w.recLow = {0.0,
              0.0,
              0.0,
              0.014426282505624435,
              0.014467504896790148,
              -0.07872200106262882,
              -0.04036797903033992,
              0.41784910915027457,
              0.7589077294536541,
              0.41784910915027457,
              -0.04036797903033992,
              -0.07872200106262882,
              0.014467504896790148,
              0.014426282505624435,
              0.0,
              0.0,
              0.0,
              0.0};
  // Both lowpass filters are symmetric, so the highpass pair is a plain
  // sign alternation: decHigh[k] = (-1)^(k+1) recLow[k], recHigh[k] = (-1)^k decLow[k].
  const std::size_t len = w.decLow.size();
  w.decHigh.resize(len);
  w.recHigh.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    w.decHigh[k] = -sign * w.recLow[k];
    w.recHigh[k] = sign * w.decLow[k];
  }
  return w;
}

const std::vector<WaveletFilters>& registry() {
  static const std::vector<WaveletFilters> all{makeBior68()};
  return all;
}

// Half-point symmetric extension: ... x1 x0 | x0 x1 ... x(n-1) | x(n-1) x(n-2) ...
inline std::size_t reflect(long long i, long long n) {
  const long long period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return static_cast<std::size_t>(i < n ? i : period - 1 - i);
}

std::vector<double> analysis(std::span<const double> x, std::span<const double> f) {
  const long long n = static_cast<long long>(x.size());
  const long long len = static_cast<long long>(f.size());
  const std::size_t outLen = static_cast<std::size_t>((n + len - 1) / 2);
  std::vector<double> out(outLen);
  for (std::size_t i = 0; i < outLen; ++i) {
    const long long top = 2 * static_cast<long long>(i) + 1;
    double acc = 0.0;
    if (top - (len - 1) >= 0 && top < n) {
      for (long long j = 0; j < len; ++j) acc += f[j] * x[top - j];
    } else {
      for (long long j = 0; j < len; ++j) acc += f[j] * x[reflect(top - j, n)];
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace

const WaveletFilters& waveletFilters(std::string_view id) {
  for (const auto& w : registry()) {
    if (w.id == id) return w;
  }
  std::string known;
  for (const auto& w : registry()) known += (known.empty() ? "" : ", ") + w.id;
  throw Error(ErrorKind::Configuration,
              "unsupported mother wavelet '" + std::string(id) + "' (supported: " + known + ")");
}

std::vector<std::string> supportedWavelets() {
  std::vector<std::string> ids;
  for (const auto& w : registry()) ids.push_back(w.id);
  return ids;
}

DwtLevel dwt(std::span<const double> x, const WaveletFilters& w) {
  if (x.empty()) throw Error(ErrorKind::InvalidInput, "dwt of an empty signal");
  return {analysis(x, w.decLow), analysis(x, w.decHigh)};
}

std::vector<double> idwt(std::span<const double> approximation, std::span<const double> detail,
                         const WaveletFilters& w, std::size_t outputLength) {
  const std::size_t m = std::max(approximation.size(), detail.size());
  if (!approximation.empty() && !detail.empty() && approximation.size() != detail.size()) {
    throw Error(ErrorKind::InvalidInput, "idwt coefficient length mismatch");
  }
  const long long len = static_cast<long long>(w.length());
  const long long full = 2 * static_cast<long long>(m) - len + 2;
  if (full < static_cast<long long>(outputLength)) {
    throw Error(ErrorKind::InvalidInput, "idwt output length exceeds synthesis support");
  }
  // Valid part of the full convolution of the upsampled coefficients,
  // starting at offset L - 2.
  std::vector<double> y(outputLength, 0.0);
  const long long offset = len - 2;
  const long long outLen = static_cast<long long>(outputLength);
  auto accumulate = [&](std::span<const double> c, const std::vector<double>& f) {
    if (c.empty()) return;
    for (long long k = 0; k < static_cast<long long>(m); ++k) {
      const double ck = c[k];
      if (ck == 0.0) continue;
      const long long base = 2 * k - offset;
      const long long jLo = std::max(0LL, -base);
      const long long jHi = std::min(len, outLen - base);
      for (long long j = jLo; j < jHi; ++j) y[base + j] += ck * f[j];
    }
  };
  accumulate(approximation, w.recLow);
  accumulate(detail, w.recHigh);
  return y;
}

WaveletCoefficients wavedec(std::span<const double> x, const WaveletFilters& w, int levels) {
  if (levels < 1) throw Error(ErrorKind::Configuration, "wavelet level count must be >= 1");
  WaveletCoefficients c;
  std::vector<double> current(x.begin(), x.end());
  for (int level = 0; level < levels; ++level) {
    c.signalLengths.push_back(current.size());
    auto step = dwt(current, w);
    c.details.push_back(std::move(step.detail));
    current = std::move(step.approximation);
  }
  c.approximation = std::move(current);
  return c;
}

namespace {

std::vector<double> synthesizeUp(std::vector<double> approx, std::span<const double> detail,
                                 const WaveletCoefficients& c, const WaveletFilters& w,
                                 int fromLevel) {
  // Level `fromLevel` combines its approximation and detail; above it all
  // details are zero.
  std::vector<double> y = idwt(approx, detail, w, c.signalLengths[fromLevel - 1]);
  for (int level = fromLevel - 1; level >= 1; --level) {
    y = idwt(y, {}, w, c.signalLengths[level - 1]);
  }
  return y;
}

}  // namespace

std::vector<double> reconstructDetail(const WaveletCoefficients& c, const WaveletFilters& w,
                                      int level) {
  if (level < 1 || level > static_cast<int>(c.details.size())) {
    throw Error(ErrorKind::InvalidInput, "wavelet level out of range");
  }
  return synthesizeUp({}, c.details[level - 1], c, w, level);
}

std::vector<double> reconstructApproximation(const WaveletCoefficients& c,
                                             const WaveletFilters& w) {
  return synthesizeUp(c.approximation, {}, c, w, static_cast<int>(c.details.size()));
}

}  // namespace tribo
