#pragma once

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <vector>

#include "tribo/framework.hpp"

namespace tribo {

nlohmann::json toJson(const TargetReading& reading);
nlohmann::json toJson(const FaultStatus& status);
/// Quantiles, prior and sampler summary; posterior samples are not included.
nlohmann::json toJson(const RULResult& result);
nlohmann::json toJson(const GoodnessReport& report);
nlohmann::json toJson(const PhaseTimings& timings);
/// Everything except timings, so equal inputs and seed give equal documents.
nlohmann::json toJson(const AnalysisOutcome& outcome);
nlohmann::json toJson(const AuditReport& report);

/// One compact JSON object per line.
std::string faultStatusLines(std::span<const FaultStatus> statuses);

/// Rows corr / mon / rob / J, one column per scored feature.
std::string goodnessTableCsv(const GoodnessReport& report);

std::string trajectoryCsv(const TrajectoryBands& bands, Instant origin);
std::string spectrumCsv(const Spectrum& spectrum);

struct PhaseStatistics {
  std::string phase;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single run
  std::size_t runs = 0;
};

/// Mean/std per phase (loadData, featureExtraction, faultDetection,
/// rulEstimation). rulEstimation statistics cover only the runs where it ran.
std::vector<PhaseStatistics> aggregateTimings(std::span<const PhaseTimings> runs);

std::string perfTableCsv(std::span<const PhaseStatistics> rows);

/// Writes `text` to `path`, creating parent directories. Throws Error(Io).
void writeTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace tribo
