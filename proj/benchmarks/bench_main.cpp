#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "tribo/core.hpp"
#include "tribo/detect.hpp"
#include "tribo/dsp.hpp"
#include "tribo/framework.hpp"
#include "tribo/io.hpp"
#include "tribo/rul.hpp"

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = normal(rng);
  return x;
}

tribo::VibrationRecord faultRecord() {
  tribo::SyntheticFaultSpec spec;
  spec.faultFrequency = 236.4;
  spec.noiseStd = 0.1;
  spec.seed = 3;
  return tribo::synthesizeFaultSignal(spec);
}

void BM_AmplitudeSpectrum(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(tribo::realSpectrum(x, 20480.0));
}
BENCHMARK(BM_AmplitudeSpectrum)->Arg(4096)->Arg(20480);

void BM_SquaredEnvelopeSpectrum(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(tribo::squaredEnvelopeSpectrum(x, 20480.0));
}
BENCHMARK(BM_SquaredEnvelopeSpectrum)->Arg(4096)->Arg(20480);

void BM_WaveletDecompose(benchmark::State& state) {
  const auto x = noise(20480, 3);
  const int levels = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tribo::waveletDecompose(x, 20480.0, "bior6.8", levels));
  }
}
BENCHMARK(BM_WaveletDecompose)->Arg(4)->Arg(12);

void BM_TimeDomainFeatures(benchmark::State& state) {
  const auto x = noise(20480, 4);
  for (auto _ : state) benchmark::DoNotOptimize(tribo::timeDomainFeatures(x));
}
BENCHMARK(BM_TimeDomainFeatures);

void BM_DetectFault(benchmark::State& state) {
  const auto record = faultRecord();
  const auto freqs = tribo::computeFaultFrequencies(tribo::rexnordZA2115(), 2000.0 / 60.0);
  const tribo::MetaParameters meta;
  for (auto _ : state) benchmark::DoNotOptimize(tribo::detectFault(record, freqs, meta, 1.0));
}
BENCHMARK(BM_DetectFault)->Unit(benchmark::kMillisecond);

void BM_AdaptiveMetropolis(benchmark::State& state) {
  const tribo::LogDensity gauss = [](const Eigen::Vector2d& x) { return -0.5 * x.squaredNorm(); };
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tribo::adaptiveMetropolis(gauss, Eigen::Vector2d(0.1, 0.1), n, 9));
  }
}
BENCHMARK(BM_AdaptiveMetropolis)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EstimateRUL(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  tribo::FeatureSeries series;
  series.featureId = 6;
  for (int k = 0; k < 500; ++k) {
    const double t = 0.1 * k;
    series.times.push_back(t);
    series.values.push_back(std::exp(0.02 * t) * (1.0 + 0.05 * normal(rng)));
  }
  const tribo::MetaParameters meta;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tribo::estimateRUL(series, meta, tribo::Instant{}, 11));
  }
}
BENCHMARK(BM_EstimateRUL)->Unit(benchmark::kMillisecond);

void BM_AnalyzeCondition(benchmark::State& state) {
  tribo::SyntheticRunSpec spec;
  spec.records = 60;
  spec.faultOnset = 30;
  spec.channels = 1;
  tribo::Registry registry;
  tribo::registerBearingPlugin(
      registry, std::make_shared<const tribo::AssetCatalog>(std::vector{spec.asset}));
  const tribo::SyntheticSource source(spec);
  tribo::AnalysisOptions options;
  options.baselineCount = 20;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tribo::analyzeCondition(spec.asset.assetId, registry, source, {}, 1, options));
  }
}
BENCHMARK(BM_AnalyzeCondition)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
