#include "tribo/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "tribo/time.hpp"

namespace tribo {

using nlohmann::json;

json toJson(const TargetReading& r) {
  return {{"target", std::string(toString(r.target.type))},
          {"frequency", r.target.frequency},
          {"rawAmplitude", r.rawAmplitude},
          {"waveletAmplitude", r.waveletAmplitude},
          {"waveletLevel", r.waveletLevel},
          {"levelAmplitudes", r.levelAmplitudes}};
}

json toJson(const FaultStatus& s) {
  json readings = json::array();
  for (const auto& r : s.readings) readings.push_back(toJson(r));
  return {{"timestamp", formatIso8601(s.detectionTime)},
          {"isFaulty", s.isFaulty},
          {"faultType", std::string(toString(s.faultType))},
          {"detectedAmplitude", s.detectedAmplitude},
          {"alarmLevel", s.alarmLevel},
          {"readings", std::move(readings)}};
}

json toJson(const RULResult& r) {
  return {{"lastMeasurement", formatIso8601(r.lastMeasurement)},
          {"lastOperationDate", formatIso8601(r.lastOperationDate)},
          {"crossing05", formatIso8601(r.crossing05)},
          {"crossing50", formatIso8601(r.crossing50)},
          {"crossing95", formatIso8601(r.crossing95)},
          {"crossingHours05", r.crossingHours05},
          {"crossingHours50", r.crossingHours50},
          {"crossingHours95", r.crossingHours95},
          {"alarmLevelRUL", r.alarmLevelRUL},
          {"featureOffset", r.featureOffset},
          {"censoredFraction", r.censoredFraction},
          {"seed", r.seed},
          {"prior", {{"c", r.prior.c}, {"b", r.prior.b}, {"sigma2", r.prior.sigma2}}},
          {"priorFromMeta", r.priorFromMeta},
          {"nOfSimulations", r.posterior.nOfSimulations},
          {"burnIn", r.posterior.burnInCount},
          {"acceptanceRate", r.posterior.acceptanceRate}};
}

json toJson(const GoodnessReport& g) {
  json rows = json::array();
  for (const auto& f : g.features) {
    json row = {{"featureId", f.featureId},
                {"feature", std::string(featureName(f.featureId))},
                {"degenerate", f.degenerate}};
    if (f.degenerate) {
      row["note"] = f.note;
    } else {
      row["corr"] = f.metrics.corr;
      row["mon"] = f.metrics.mon;
      row["rob"] = f.metrics.rob;
      row["score"] = f.score;
    }
    rows.push_back(std::move(row));
  }
  return {{"weights", {{"corr", g.weights.corr}, {"mon", g.weights.mon}, {"rob", g.weights.rob}}},
          {"selectedFeatureId", g.selectedFeatureId},
          {"features", std::move(rows)}};
}

json toJson(const PhaseTimings& t) {
  json j = {{"loadData", t.loadData},
            {"featureExtraction", t.featureExtraction},
            {"faultDetection", t.faultDetection},
            {"rulSkipped", t.rulSkipped},
            {"total", t.total}};
  j["rulEstimation"] = t.rulEstimation ? json(*t.rulEstimation) : json(nullptr);
  return j;
}

json toJson(const AnalysisOutcome& o) {
  json j = {{"assetId", o.assetId},
            {"seed", o.seed},
            {"records", o.statuses.size()},
            {"alarmLevel", o.alarmLevel},
            {"faultStatus", toJson(o.faultStatus)},
            {"rulSkipped", !o.rul.has_value()}};
  if (o.firstDetectionIndex) {
    j["firstDetectionIndex"] = *o.firstDetectionIndex;
    j["firstDetection"] = formatIso8601(o.faultStatus.detectionTime);
  } else {
    j["firstDetectionIndex"] = nullptr;
    j["firstDetection"] = nullptr;
  }
  if (o.goodness) j["goodness"] = toJson(*o.goodness);
  if (o.rul) j["rul"] = toJson(*o.rul);
  return j;
}

json toJson(const AuditReport& a) {
  json rows = json::array();
  for (const auto& e : a.entries) {
    rows.push_back({{"name", e.name}, {"value", e.value}, {"default", e.isDefault},
                    {"note", e.note}});
  }
  return {{"count", a.count()}, {"parameters", std::move(rows)}};
}

std::string faultStatusLines(std::span<const FaultStatus> statuses) {
  std::string out;
  for (const auto& s : statuses) {
    json j = toJson(s);
    j.erase("readings");
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string goodnessTableCsv(const GoodnessReport& g) {
  std::ostringstream os;
  os << "metric";
  for (const auto& f : g.features) os << ',' << f.featureId;
  os << '\n';
  auto row = [&](const char* name, auto pick) {
    os << name;
    for (const auto& f : g.features) {
      os << ',';
      if (!f.degenerate) os << formatDouble17(pick(f));
    }
    os << '\n';
  };
  row("corr", [](const FeatureGoodness& f) { return f.metrics.corr; });
  row("mon", [](const FeatureGoodness& f) { return f.metrics.mon; });
  row("rob", [](const FeatureGoodness& f) { return f.metrics.rob; });
  row("J", [](const FeatureGoodness& f) { return f.score; });
  return os.str();
}

std::string trajectoryCsv(const TrajectoryBands& b, Instant origin) {
  std::ostringstream os;
  os << "timestamp,hours,q05,q50,q95\n";
  for (std::size_t i = 0; i < b.hours.size(); ++i) {
    os << formatIso8601(addHours(origin, b.hours[i])) << ',' << formatDouble17(b.hours[i]) << ','
       << formatDouble17(b.q05[i]) << ',' << formatDouble17(b.q50[i]) << ','
       << formatDouble17(b.q95[i]) << '\n';
  }
  return os.str();
}

std::string spectrumCsv(const Spectrum& s) {
  std::string out = "frequency,amplitude\n";
  for (std::size_t i = 0; i < s.frequencies.size(); ++i) {
    out += formatDouble17(s.frequencies[i]);
    out += ',';
    out += formatDouble17(s.amplitudes[i]);
    out += '\n';
  }
  return out;
}

namespace {

PhaseStatistics stats(std::string phase, const std::vector<double>& xs) {
  PhaseStatistics p{std::move(phase), 0.0, 0.0, xs.size()};
  if (xs.empty()) return p;
  for (double x : xs) p.mean += x;
  p.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - p.mean) * (x - p.mean);
    p.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return p;
}

}  // namespace

std::vector<PhaseStatistics> aggregateTimings(std::span<const PhaseTimings> runs) {
  std::vector<double> load, feat, det, rul;
  for (const auto& t : runs) {
    load.push_back(t.loadData);
    feat.push_back(t.featureExtraction);
    det.push_back(t.faultDetection);
    if (t.rulEstimation) rul.push_back(*t.rulEstimation);
  }
  return {stats("loadData", load), stats("featureExtraction", feat),
          stats("faultDetection", det), stats("rulEstimation", rul)};
}

std::string perfTableCsv(std::span<const PhaseStatistics> rows) {
  std::string out = "phase,mean_s,std_s,runs\n";
  for (const auto& r : rows) {
    out += r.phase + ',' + formatDouble17(r.mean) + ',' + formatDouble17(r.std) + ',' +
           std::to_string(r.runs) + '\n';
  }
  return out;
}

void writeTextFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, "cannot write " + path.string());
  f << text;
  if (!f) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace tribo
