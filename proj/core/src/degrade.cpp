#include "tribo/degrade.hpp"

#include <algorithm>
#include <cmath>

#include "tribo/error.hpp"

namespace tribo {

void FeatureSeries::validate() const {
  if (times.size() != values.size()) {
    throw Error(ErrorKind::InvalidInput, "feature series times/values length mismatch");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(values[i])) {
      throw Error(ErrorKind::InvalidInput, "feature series holds non-finite entries");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw Error(ErrorKind::InvalidInput, "feature series times must be strictly increasing");
    }
  }
}

std::vector<FeatureSeries> seriesFromFeatureVectors(std::span<const FeatureVector> vectors) {
  std::vector<FeatureSeries> out;
  if (vectors.empty()) return out;
  const Instant origin = vectors.front().timestamp;
  for (int id = 1; id <= kFeatureCount; ++id) {
    const bool present = std::all_of(vectors.begin(), vectors.end(),
                                     [id](const FeatureVector& v) { return v.get(id).has_value(); });
    if (!present) continue;
    FeatureSeries s;
    s.featureId = id;
    s.origin = origin;
    for (const auto& v : vectors) {
      s.times.push_back(hoursBetween(origin, v.timestamp));
      s.values.push_back(*v.get(id));
    }
    out.push_back(std::move(s));
  }
  return out;
}

FeatureSeries smoothFeature(const FeatureSeries& series, int window) {
  if (window < 1) throw Error(ErrorKind::Configuration, "smoothing window must be >= 1");
  if (static_cast<std::size_t>(window) > series.size()) {
    throw Error(ErrorKind::Configuration, "smoothing window " + std::to_string(window) +
                                              " exceeds series length " +
                                              std::to_string(series.size()));
  }
  FeatureSeries out = series;
  const auto& x = series.values;
  const long long k = static_cast<long long>(x.size());
  const bool even = window % 2 == 0;
  const long long half = even ? window / 2 : (window - 1) / 2;

  for (long long i = 0; i < k; ++i) {
    const long long reach = std::min({half, i, k - 1 - i});
    double acc = 0.0;
    double weight = 0.0;
    for (long long j = i - reach; j <= i + reach; ++j) {
      const bool endPoint = even && reach == half && (j == i - reach || j == i + reach);
      const double w = endPoint ? 0.5 : 1.0;
      acc += w * x[static_cast<std::size_t>(j)];
      weight += w;
    }
    out.values[static_cast<std::size_t>(i)] = acc / weight;
  }
  return out;
}

FeatureSeries resampleUniform(const FeatureSeries& series, double stepHours) {
  if (!(stepHours > 0.0)) throw Error(ErrorKind::Configuration, "resample step must be > 0");
  if (series.size() < 2) {
    throw Error(ErrorKind::InvalidInput, "cannot resample a series with fewer than 2 points");
  }
  series.validate();
  const auto& t = series.times;
  const auto& x = series.values;
  const double t0 = t.front();
  const double span = t.back() - t0;
  const auto count = static_cast<std::size_t>(std::floor(span / stepHours + 1e-9)) + 1;

  FeatureSeries out;
  out.featureId = series.featureId;
  out.origin = series.origin;
  out.times.reserve(count);
  out.values.reserve(count);
  std::size_t seg = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double ti = std::min(t0 + static_cast<double>(i) * stepHours, t.back());
    while (seg + 2 < t.size() && t[seg + 1] < ti) ++seg;
    const double frac = (ti - t[seg]) / (t[seg + 1] - t[seg]);
    out.times.push_back(ti);
    out.values.push_back(x[seg] + std::clamp(frac, 0.0, 1.0) * (x[seg + 1] - x[seg]));
  }
  return out;
}

GoodnessMetrics goodnessMetrics(const FeatureSeries& series, int window) {
  if (series.size() < 3) {
    throw Error(ErrorKind::InvalidInput, "goodness metrics need at least 3 points");
  }
  series.validate();
  const auto trend = smoothFeature(series, window).values;
  const auto& x = series.values;
  const auto& t = series.times;
  const double k = static_cast<double>(x.size());

  GoodnessMetrics m;

  double meanTrend = 0.0;
  double meanTime = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    meanTrend += trend[i];
    meanTime += t[i];
  }
  meanTrend /= k;
  meanTime /= k;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = trend[i] - meanTrend;
    const double dy = t[i] - meanTime;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  m.corr = (sxx > 0.0 && syy > 0.0) ? std::min(1.0, std::abs(sxy) / std::sqrt(sxx * syy)) : 0.0;

  long long up = 0;
  long long down = 0;
  for (std::size_t i = 1; i < trend.size(); ++i) {
    const double d = trend[i] - trend[i - 1];
    if (d > 0.0) ++up;
    if (d < 0.0) ++down;
  }
  m.mon = static_cast<double>(std::llabs(up - down)) / (k - 1.0);

  double rob = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    rob += std::exp(-std::abs(x[i] - trend[i]) / (std::abs(x[i]) + kRobustnessGuard));
  }
  m.rob = rob / k;
  return m;
}

double goodnessScore(const GoodnessMetrics& m, const GoodnessWeights& w) {
  return w.corr * m.corr + w.mon * m.mon + w.rob * m.rob;
}

const FeatureGoodness& GoodnessReport::selected() const {
  for (const auto& f : features) {
    if (f.featureId == selectedFeatureId) return f;
  }
  throw Error(ErrorKind::Selection, "report has no selected feature");
}

GoodnessReport selectDegradationFeature(std::span<const FeatureSeries> candidates,
                                        const MetaParameters& meta,
                                        const SelectionOptions& options) {
  if (candidates.empty()) throw Error(ErrorKind::Selection, "no candidate degradation features");
  GoodnessReport report;
  report.weights = meta.degParamWeights.normalized();

  const FeatureGoodness* best = nullptr;
  for (const auto& candidate : candidates) {
    FeatureGoodness g;
    g.featureId = candidate.featureId;
    try {
      FeatureSeries s = resampleUniform(candidate, options.stepHours);
      if (options.minMaxScale) {
        const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
        const double low = *lo;
        const double range = *hi - *lo;
        if (range > 0.0) {
          for (auto& v : s.values) v = (v - low) / range;
        }
      }
      const int window = std::min<int>(options.window, static_cast<int>(s.size()));
      g.metrics = goodnessMetrics(s, window);
      g.score = goodnessScore(g.metrics, report.weights);
    } catch (const Error& e) {
      g.degenerate = true;
      g.note = e.what();
    }
    report.features.push_back(std::move(g));
  }
  for (const auto& g : report.features) {
    if (g.degenerate) continue;
    if (best == nullptr || g.score > best->score ||
        (g.score == best->score && g.featureId < best->featureId)) {
      best = &g;
    }
  }
  if (best == nullptr) {
    throw Error(ErrorKind::Selection, "every candidate degradation feature is degenerate");
  }
  report.selectedFeatureId = best->featureId;
  return report;
}

}  // namespace tribo
