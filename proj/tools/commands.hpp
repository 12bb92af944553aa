#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace tribo::cli {

struct Options {
  std::filesystem::path dataDir;
  std::filesystem::path assetConfig;
  std::filesystem::path metaConfig;
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;
  std::size_t runs = 100;
  std::size_t baselineCount = 50;

  // synth
  std::size_t records = 120;
  std::optional<std::size_t> faultOnset;
  std::string faultType = "BPFO";
  bool healthy = false;
  std::size_t channels = 4;
  double noiseStd = 0.05;

  // features / rul
  std::filesystem::path featureTable;
  std::optional<int> featureId;
  std::optional<std::string> targetFault;
  std::optional<std::string> from;
};

int runSynth(const Options& o);
int runIngest(const Options& o);
int runFeatures(const Options& o);
int runDetect(const Options& o);
int runRul(const Options& o);
int runAll(const Options& o);
int runPerf(const Options& o);
int runConfigAudit(const Options& o);

}  // namespace tribo::cli
