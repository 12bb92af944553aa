#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace tribo::fft {

namespace {

enum class PlanKind { RealForward, ComplexBackward };

// The FFTW planner is not thread-safe; executing a finished plan on new
// arrays is. Plans are created once per (kind, size) under the lock and kept
// for the lifetime of the process.
class PlanCache {
 public:
  fftw_plan get(PlanKind kind, int n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(kind, n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = nullptr;
    if (kind == PlanKind::RealForward) {
      double* in = fftw_alloc_real(n);
      fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
      plan = fftw_plan_dft_r2c_1d(n, in, out, flags);
      fftw_free(in);
      fftw_free(out);
    } else {
      fftw_complex* in = fftw_alloc_complex(n);
      fftw_complex* out = fftw_alloc_complex(n);
      plan = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, flags);
      fftw_free(in);
      fftw_free(out);
    }
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<PlanKind, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

std::vector<Complex> forwardReal(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> in(x.begin(), x.end());
  std::vector<Complex> out(static_cast<std::size_t>(n / 2 + 1));
  fftw_execute_dft_r2c(cache().get(PlanKind::RealForward, n), in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<Complex> inverse(std::span<const Complex> spectrum) {
  const int n = static_cast<int>(spectrum.size());
  std::vector<Complex> in(spectrum.begin(), spectrum.end());
  std::vector<Complex> out(spectrum.size());
  fftw_execute_dft(cache().get(PlanKind::ComplexBackward, n),
                   reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / n;
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace tribo::fft
