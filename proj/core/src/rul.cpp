#include "tribo/rul.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tribo/error.hpp"

namespace tribo {

DegradationModel fitExponentialPrior(const FeatureSeries& series) {
  if (series.size() < 3) {
    throw Error(ErrorKind::InvalidInput, "exponential fit needs at least 3 points");
  }
  series.validate();
  const auto& t = series.times;
  const auto& x = series.values;
  for (double v : x) {
    if (!(v > 0.0)) {
      throw Error(ErrorKind::FitDomain, "exponential fit requires positive feature values");
    }
  }

  const double k = static_cast<double>(x.size());
  double meanT = 0.0;
  double meanY = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    meanT += t[i];
    meanY += std::log(x[i]);
  }
  meanT /= k;
  meanY /= k;
  double stt = 0.0;
  double sty = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dt = t[i] - meanT;
    stt += dt * dt;
    sty += dt * (std::log(x[i]) - meanY);
  }
  const double b = sty / stt;
  const double logC = meanY - b * meanT;

  double rss = 0.0;
  double meanSquareFit = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::log(x[i]) - logC - b * t[i];
    rss += r * r;
    const double fit = std::exp(logC + b * t[i]);
    meanSquareFit += fit * fit;
  }
  meanSquareFit /= k;
  const double logVariance = rss / (k - 2.0);
  const double floor = 1e-12 * meanSquareFit + std::numeric_limits<double>::min();

  DegradationModel m;
  m.c = std::exp(logC);
  m.b = b;
  m.sigma2 = std::max(logVariance * meanSquareFit, floor);
  return m;
}

namespace {

double gaussianLogDensity(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi);
}

double priorWidth(double estimate) { return std::max(0.5 * std::abs(estimate), 1e-6); }

}  // namespace

double logPosterior(double c, double b, const FeatureSeries& series,
                    const DegradationModel& prior) {
  if (!(c > 0.0) || !std::isfinite(b)) return -std::numeric_limits<double>::infinity();
  const auto& t = series.times;
  const auto& x = series.values;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = x[i] - c * std::exp(b * t[i]);
    ss += r * r;
  }
  const double n = static_cast<double>(x.size());
  const double logLik =
      -0.5 * ss / prior.sigma2 - 0.5 * n * std::log(2.0 * std::numbers::pi * prior.sigma2);
  const double value = logLik + gaussianLogDensity(c, prior.c, priorWidth(prior.c)) +
                       gaussianLogDensity(b, prior.b, priorWidth(prior.b));
  return std::isnan(value) ? -std::numeric_limits<double>::infinity() : value;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorKind::InvalidInput, "quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(p, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

RULResult estimateRUL(const FeatureSeries& series, const MetaParameters& meta,
                      Instant lastMeasurement, std::uint64_t seed) {
  const double threshold = meta.alarmLevelRUL;
  if (!(threshold > 0.0)) throw Error(ErrorKind::Configuration, "alarmLevelRUL must be > 0");

  RULResult result;
  result.seed = seed;
  result.alarmLevelRUL = threshold;
  result.lastMeasurement = lastMeasurement;
  if (meta.rulModelParameters) {
    result.prior = *meta.rulModelParameters;
    result.priorFromMeta = true;
  } else {
    result.prior = fitExponentialPrior(series);
  }

  const DegradationModel prior = result.prior;
  const LogDensity target = [&series, prior](const Eigen::Vector2d& p) {
    return logPosterior(p[0], p[1], series, prior);
  };
  result.posterior =
      adaptiveMetropolis(target, Eigen::Vector2d(prior.c, prior.b), meta.nOfSimulations, seed);

  std::vector<double> crossings;
  crossings.reserve(result.posterior.samples.size());
  std::size_t censored = 0;
  for (const auto& s : result.posterior.samples) {
    const double c = s[0];
    const double b = s[1];
    if (c >= threshold) {
      crossings.push_back(0.0);
    } else if (b > 0.0) {
      crossings.push_back(std::log(threshold / c) / b);
    } else {
      ++censored;
    }
  }
  result.censoredFraction =
      static_cast<double>(censored) / static_cast<double>(result.posterior.samples.size());
  if (result.censoredFraction > 0.5) {
    throw LowConfidenceError("posterior rarely reaches the RUL threshold (censored fraction " +
                                 std::to_string(result.censoredFraction) + ")",
                             result.censoredFraction);
  }

  result.crossingHours05 = quantile(crossings, 0.05);
  result.crossingHours50 = quantile(crossings, 0.50);
  result.crossingHours95 = quantile(crossings, 0.95);

  const bool alreadyAbove = !series.values.empty() && series.values.back() >= threshold;
  auto toInstant = [&](double hours) {
    const Instant at = addHours(series.origin, hours);
    return (alreadyAbove || at < lastMeasurement) ? lastMeasurement : at;
  };
  result.crossing05 = toInstant(result.crossingHours05);
  result.crossing50 = toInstant(result.crossingHours50);
  result.crossing95 = toInstant(result.crossingHours95);
  result.lastOperationDate = result.crossing05;
  return result;
}

TrajectoryBands trajectoryQuantiles(const PosteriorSampleSet& posterior,
                                    std::span<const double> hours, double featureOffset) {
  if (posterior.samples.empty()) {
    throw Error(ErrorKind::InvalidInput, "trajectory bands need posterior samples");
  }
  TrajectoryBands bands;
  std::vector<double> values(posterior.samples.size());
  for (double t : hours) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto& s = posterior.samples[i];
      values[i] = s[0] * std::exp(s[1] * t) - featureOffset;
    }
    bands.hours.push_back(t);
    bands.q05.push_back(quantile(values, 0.05));
    bands.q50.push_back(quantile(values, 0.50));
    bands.q95.push_back(quantile(values, 0.95));
  }
  return bands;
}

}  // namespace tribo
