#pragma once

// Reference computations used to cross-check the library. They take the
// slow, obvious route on purpose and share no code with it.

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

inline std::vector<cd> naiveDft(const std::vector<cd>& x, bool inverse = false) {
  const std::size_t n = x.size();
  std::vector<cd> out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    cd acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double phase =
          sign * 2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      acc += x[j] * cd(std::cos(phase), std::sin(phase));
    }
    out[k] = inverse ? acc / static_cast<double>(n) : acc;
  }
  return out;
}

/// One-sided amplitude: |X_k| * 2/N, DC and Nyquist * 1/N.
inline std::vector<double> amplitudeSpectrum(const std::vector<double>& x) {
  std::vector<cd> c(x.begin(), x.end());
  const auto X = naiveDft(c);
  const std::size_t n = x.size();
  std::vector<double> a(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const bool edge = k == 0 || (n % 2 == 0 && k == n / 2);
    a[k] = std::abs(X[k]) * (edge ? 1.0 : 2.0) / static_cast<double>(n);
  }
  return a;
}

/// Analytic signal through the discrete Hilbert transform, squared
/// magnitude, mean removed, amplitude spectrum with the DC bin zeroed.
inline std::vector<double> squaredEnvelopeSpectrum(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<cd> c(x.begin(), x.end());
  auto X = naiveDft(c);
  for (std::size_t k = 1; k < n; ++k) {
    if (2 * k < n) X[k] *= 2.0;
    else if (2 * k > n) X[k] = 0.0;
  }
  const auto z = naiveDft(X, true);
  std::vector<double> e(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = std::norm(z[i]);
    mean += e[i];
  }
  mean /= static_cast<double>(n);
  for (double& v : e) v -= mean;
  auto a = amplitudeSpectrum(e);
  a[0] = 0.0;
  return a;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

inline std::vector<double> gaussianNoise(std::size_t n, double sd, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sd);
  std::vector<double> x(n);
  for (double& v : x) v = g(rng);
  return x;
}

/// Expected maximum of m i.i.d. Rayleigh(s) variables, by quadrature of
/// E[max] = integral of 1 - F(a)^m.
inline double expectedRayleighMax(double s, std::size_t m) {
  const double upper = s * std::sqrt(2.0 * std::log(static_cast<double>(m)) + 60.0);
  const int steps = 20000;
  const double h = upper / steps;
  double acc = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double a = i * h;
    const double F = 1.0 - std::exp(-a * a / (2.0 * s * s));
    const double f = 1.0 - std::pow(F, static_cast<double>(m));
    acc += (i == 0 || i == steps ? 0.5 : 1.0) * f;
  }
  return acc * h;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("tribo-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace oracle
