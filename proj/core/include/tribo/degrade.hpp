#pragma once

#include <span>
#include <string>
#include <vector>

#include "tribo/core.hpp"
#include "tribo/dsp.hpp"

namespace tribo {

/// A scalar feature over machine lifetime. `times` are hours since `origin`.
struct FeatureSeries {
  int featureId = 0;
  Instant origin{};
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  /// Throws Error(InvalidInput) for mismatched lengths, non-finite entries or
  /// times that are not strictly increasing.
  void validate() const;
};

/// Builds one series per feature id present in every vector, times measured
/// from the first vector's timestamp.
std::vector<FeatureSeries> seriesFromFeatureVectors(std::span<const FeatureVector> vectors);

/// Centered moving average. Odd windows average `window` samples; even
/// windows use the usual centered 2 x window scheme (end points weighted
/// one half). Near the ends the window shrinks symmetrically, so constant
/// and linear series pass through unchanged.
FeatureSeries smoothFeature(const FeatureSeries& series, int window);

/// Linear interpolation onto t0, t0 + step, ... <= t_last.
FeatureSeries resampleUniform(const FeatureSeries& series, double stepHours);

struct GoodnessMetrics {
  double corr = 0.0;
  double mon = 0.0;
  double rob = 0.0;
};

/// Guard for the robustness denominator.
inline constexpr double kRobustnessGuard = 1e-12;

/// Correlation, monotonicity and robustness of a series against its
/// moving-average trend.
GoodnessMetrics goodnessMetrics(const FeatureSeries& series, int window);

double goodnessScore(const GoodnessMetrics& metrics, const GoodnessWeights& weights);

struct FeatureGoodness {
  int featureId = 0;
  GoodnessMetrics metrics;
  double score = 0.0;
  bool degenerate = false;
  std::string note;
};

struct GoodnessReport {
  std::vector<FeatureGoodness> features;
  int selectedFeatureId = 0;
  GoodnessWeights weights;

  const FeatureGoodness& selected() const;
};

struct SelectionOptions {
  double stepHours = 10.0 / 60.0;
  int window = 20;
  /// Rescale each candidate to [0, 1] before scoring.
  bool minMaxScale = false;
};

/// Resamples each candidate, scores it and picks the best (ties go to the
/// lowest feature id). Throws Error(Selection) if no candidate can be scored.
GoodnessReport selectDegradationFeature(std::span<const FeatureSeries> candidates,
                                        const MetaParameters& meta,
                                        const SelectionOptions& options = {});

}  // namespace tribo
