#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tribo/core.hpp"
#include "tribo/degrade.hpp"

namespace tribo {

/// Least squares on ln(x) = ln(c) + b t. The log-space residual variance s^2
/// is mapped to the data scale with the delta method,
/// sigma2 = s^2 * mean_k (c exp(b t_k))^2, and floored at a tiny positive
/// value so that noiseless data still yields a proper likelihood.
/// Throws Error(FitDomain) for nonpositive values.
DegradationModel fitExponentialPrior(const FeatureSeries& series);

/// Gaussian log-likelihood of x_k - c exp(b t_k) with variance prior.sigma2,
/// plus independent Gaussian log-priors on c and b centred on the prior
/// estimates with standard deviation max(0.5 |estimate|, 1e-6).
/// Returns -infinity for c <= 0.
double logPosterior(double c, double b, const FeatureSeries& series,
                    const DegradationModel& prior);

using LogDensity = std::function<double(const Eigen::Vector2d&)>;

struct AdaptiveMetropolisOptions {
  /// Iterations with the fixed initial proposal before adaptation starts.
  int adaptationStart = 100;
  /// s_d = 2.4^2 / d for d = 2.
  double scale = 2.4 * 2.4 / 2.0;
  double epsilon = 1e-10;
  /// Initial proposal standard deviations; default 0.1 |init_i| (0.1 when
  /// init_i is zero).
  std::optional<Eigen::Vector2d> initialStd{};
};

struct PosteriorSampleSet {
  std::vector<Eigen::Vector2d> samples;
  int nOfSimulations = 0;
  int burnInCount = 0;
  double acceptanceRate = 0.0;
};

/// Random-walk Metropolis whose Gaussian proposal covariance is re-estimated
/// from the whole chain history. The first half of the chain is dropped.
/// Identical seeds give identical chains.
PosteriorSampleSet adaptiveMetropolis(const LogDensity& target, const Eigen::Vector2d& init,
                                      int nOfSimulations, std::uint64_t seed,
                                      const AdaptiveMetropolisOptions& options = {});

struct RULResult {
  Instant lastMeasurement{};
  Instant lastOperationDate{};  // equals crossing05
  Instant crossing05{};
  Instant crossing50{};
  Instant crossing95{};
  /// Same quantiles in hours since the series origin, before clamping.
  double crossingHours05 = 0.0;
  double crossingHours50 = 0.0;
  double crossingHours95 = 0.0;
  double alarmLevelRUL = 0.0;
  double censoredFraction = 0.0;
  /// Added to feature values (and the threshold) to make them positive.
  double featureOffset = 0.0;
  std::uint64_t seed = 0;
  DegradationModel prior;
  bool priorFromMeta = false;
  PosteriorSampleSet posterior;
};

/// Empirical quantile with linear interpolation between order statistics.
double quantile(std::vector<double> values, double p);

/// Fits (or takes) the prior, samples the posterior and converts every
/// (c, b) sample into a threshold-crossing time. Throws LowConfidenceError
/// when more than half of the samples never cross.
RULResult estimateRUL(const FeatureSeries& series, const MetaParameters& meta,
                      Instant lastMeasurement, std::uint64_t seed);

/// 5 / 50 / 95 % bands of c exp(b t) over the posterior samples.
struct TrajectoryBands {
  std::vector<double> hours;
  std::vector<double> q05;
  std::vector<double> q50;
  std::vector<double> q95;
};

TrajectoryBands trajectoryQuantiles(const PosteriorSampleSet& posterior,
                                    std::span<const double> hours, double featureOffset = 0.0);

}  // namespace tribo
