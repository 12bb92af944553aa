#pragma once

#include <complex>
#include <span>
#include <vector>

namespace tribo::fft {

using Complex = std::complex<double>;

/// Non-redundant half of the DFT of a real signal: n/2 + 1 bins, unscaled.
std::vector<Complex> forwardReal(std::span<const double> x);

/// Inverse DFT scaled by 1/n.
std::vector<Complex> inverse(std::span<const Complex> spectrum);

}  // namespace tribo::fft
