#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tribo/core.hpp"
#include "tribo/degrade.hpp"
#include "tribo/detect.hpp"
#include "tribo/dsp.hpp"
#include "tribo/error.hpp"
#include "tribo/io.hpp"
#include "tribo/rul.hpp"

namespace tribo {

// ---------------------------------------------------------------------------
// Measurement sources

/// A time-ordered sequence of multi-channel snapshots.
class MeasurementSource {
 public:
  virtual ~MeasurementSource() = default;
  virtual std::size_t recordCount() const = 0;
  /// Every channel of snapshot `index`.
  virtual std::vector<VibrationRecord> read(std::size_t index) const = 0;
};

/// IMS-layout run directory.
class DirectorySource final : public MeasurementSource {
 public:
  explicit DirectorySource(const std::filesystem::path& dir, ImsReadOptions options = {});
  std::size_t recordCount() const override { return run_.records.size(); }
  std::vector<VibrationRecord> read(std::size_t index) const override;
  const RunDirectory& run() const noexcept { return run_; }

 private:
  RunDirectory run_;
  ImsReadOptions options_;
};

class MemorySource final : public MeasurementSource {
 public:
  explicit MemorySource(std::vector<std::vector<VibrationRecord>> snapshots)
      : snapshots_(std::move(snapshots)) {}
  std::size_t recordCount() const override { return snapshots_.size(); }
  std::vector<VibrationRecord> read(std::size_t index) const override {
    return snapshots_.at(index);
  }

 private:
  std::vector<std::vector<VibrationRecord>> snapshots_;
};

/// Generates snapshots of a synthetic run on demand.
class SyntheticSource final : public MeasurementSource {
 public:
  explicit SyntheticSource(SyntheticRunSpec spec) : spec_(std::move(spec)) {}
  std::size_t recordCount() const override { return spec_.records; }
  std::vector<VibrationRecord> read(std::size_t index) const override {
    return synthesizeRunRecord(spec_, index);
  }

 private:
  SyntheticRunSpec spec_;
};

// ---------------------------------------------------------------------------
// Plug-in interfaces

enum class InterfaceId { MeasurementData, AssetData, FeatureExtractor, FaultDetector, RULalgorithm };
inline constexpr std::size_t kInterfaceCount = 5;

std::string_view toString(InterfaceId id) noexcept;

class IMeasurementData {
 public:
  virtual ~IMeasurementData() = default;
  /// Records of the asset's channel in timestamp order.
  virtual std::vector<VibrationRecord> load(const MeasurementSource& source,
                                            const AssetRecord& asset) = 0;
};

class IAssetData {
 public:
  virtual ~IAssetData() = default;
  virtual AssetRecord asset(const std::string& assetId) = 0;
};

class IFeatureExtractor {
 public:
  virtual ~IFeatureExtractor() = default;
  /// Per-record features; defect-frequency features may be left empty.
  virtual FeatureVector extract(const VibrationRecord& record, const AssetRecord& asset,
                                const MetaParameters& meta) = 0;
  virtual GoodnessReport selectDegradationFeature(std::span<const FeatureSeries> candidates,
                                                  const MetaParameters& meta) = 0;
};

class IFaultDetector {
 public:
  virtual ~IFaultDetector() = default;
  /// Alarm level from steady-state records.
  virtual double calibrate(std::span<const VibrationRecord> baseline, const AssetRecord& asset,
                           const MetaParameters& meta) = 0;
  virtual FaultStatus detect(const VibrationRecord& record, const AssetRecord& asset,
                             const MetaParameters& meta, double alarmLevel) = 0;
};

class IRULalgorithm {
 public:
  virtual ~IRULalgorithm() = default;
  virtual RULResult estimate(const FeatureSeries& series, const MetaParameters& meta,
                             Instant lastMeasurement, std::uint64_t seed) = 0;
};

template <class I>
struct InterfaceTraits;
template <>
struct InterfaceTraits<IMeasurementData> {
  static constexpr InterfaceId id = InterfaceId::MeasurementData;
};
template <>
struct InterfaceTraits<IAssetData> {
  static constexpr InterfaceId id = InterfaceId::AssetData;
};
template <>
struct InterfaceTraits<IFeatureExtractor> {
  static constexpr InterfaceId id = InterfaceId::FeatureExtractor;
};
template <>
struct InterfaceTraits<IFaultDetector> {
  static constexpr InterfaceId id = InterfaceId::FaultDetector;
};
template <>
struct InterfaceTraits<IRULalgorithm> {
  static constexpr InterfaceId id = InterfaceId::RULalgorithm;
};

// ---------------------------------------------------------------------------
// Registry

struct PluginDescriptor {
  std::string pluginName;
  std::set<InterfaceId> provides;
  std::string version;
};

template <class I>
using Factory = std::function<std::unique_ptr<I>()>;

/// Run-time registry of plug-in factories keyed by (interface, plug-in name).
/// Reads may run concurrently; writes are serialized and may happen while
/// analyses are running. Kept header-only so that dynamically loaded plug-ins
/// can register without linking the library.
class Registry {
 public:
  template <class I>
  void registerImplementation(const std::string& pluginName, Factory<I> factory,
                              const std::string& version = "1.0") {
    if (pluginName.empty()) throw Error(ErrorKind::Registration, "plug-in name must not be empty");
    if (!factory) throw Error(ErrorKind::Registration, "plug-in factory must not be empty");
    std::unique_lock lock(mutex_);
    auto& table = tableFor<I>();
    if (table.contains(pluginName)) {
      throw Error(ErrorKind::Registration,
                  "plug-in '" + pluginName + "' already provides " +
                      std::string(interfaceName(InterfaceTraits<I>::id)));
    }
    table.emplace(pluginName, std::move(factory));
    auto& d = descriptors_[pluginName];
    d.pluginName = pluginName;
    d.provides.insert(InterfaceTraits<I>::id);
    d.version = version;
  }

  /// Fresh instance from the factory bound to (I, pluginName). Throws
  /// Error(Lookup) listing the registered names when unbound.
  template <class I>
  std::unique_ptr<I> resolve(const std::string& pluginName) const {
    Factory<I> factory;
    {
      std::shared_lock lock(mutex_);
      const auto& table = tableFor<I>();
      auto it = table.find(pluginName);
      if (it == table.end()) {
        std::string known;
        for (const auto& [name, f] : table) known += (known.empty() ? "" : ", ") + name;
        throw Error(ErrorKind::Lookup,
                    "no " + std::string(interfaceName(InterfaceTraits<I>::id)) +
                        " implementation named '" + pluginName + "' (registered: " +
                        (known.empty() ? "none" : known) + ")");
      }
      factory = it->second;
    }
    auto instance = factory();
    if (!instance) {
      throw Error(ErrorKind::Lookup, "factory for '" + pluginName + "' returned nothing");
    }
    return instance;
  }

  std::vector<std::string> names(InterfaceId id) const {
    std::shared_lock lock(mutex_);
    std::vector<std::string> out;
    auto collect = [&out](const auto& table) {
      for (const auto& [name, f] : table) out.push_back(name);
    };
    switch (id) {
      case InterfaceId::MeasurementData: collect(measurement_); break;
      case InterfaceId::AssetData: collect(asset_); break;
      case InterfaceId::FeatureExtractor: collect(features_); break;
      case InterfaceId::FaultDetector: collect(detectors_); break;
      case InterfaceId::RULalgorithm: collect(rul_); break;
    }
    return out;
  }

  std::vector<PluginDescriptor> plugins() const {
    std::shared_lock lock(mutex_);
    std::vector<PluginDescriptor> out;
    for (const auto& [name, d] : descriptors_) out.push_back(d);
    return out;
  }

  static constexpr std::string_view interfaceName(InterfaceId id) noexcept {
    switch (id) {
      case InterfaceId::MeasurementData: return "MeasurementData";
      case InterfaceId::AssetData: return "AssetData";
      case InterfaceId::FeatureExtractor: return "FeatureExtractor";
      case InterfaceId::FaultDetector: return "FaultDetector";
      case InterfaceId::RULalgorithm: return "RULalgorithm";
    }
    return "unknown";
  }

 private:
  template <class I>
  using Table = std::map<std::string, Factory<I>, std::less<>>;

  template <class I>
  Table<I>& tableFor() {
    return const_cast<Table<I>&>(std::as_const(*this).tableFor<I>());
  }
  template <class I>
  const Table<I>& tableFor() const {
    if constexpr (std::is_same_v<I, IMeasurementData>) return measurement_;
    else if constexpr (std::is_same_v<I, IAssetData>) return asset_;
    else if constexpr (std::is_same_v<I, IFeatureExtractor>) return features_;
    else if constexpr (std::is_same_v<I, IFaultDetector>) return detectors_;
    else return rul_;
  }

  mutable std::shared_mutex mutex_;
  Table<IMeasurementData> measurement_;
  Table<IAssetData> asset_;
  Table<IFeatureExtractor> features_;
  Table<IFaultDetector> detectors_;
  Table<IRULalgorithm> rul_;
  std::map<std::string, PluginDescriptor> descriptors_;
};

/// Entry point a shared-library plug-in exports:
///   extern "C" void tribo_register_plugin_v1(tribo::Registry* registry);
inline constexpr const char* kPluginEntryPoint = "tribo_register_plugin_v1";
using PluginEntryFn = void (*)(Registry*);

/// dlopen()s `library` and calls its entry point. The library stays loaded
/// for the rest of the process. Throws Error(Registration).
void loadPluginLibrary(Registry& registry, const std::filesystem::path& library);

// ---------------------------------------------------------------------------
// Bearing plug-in

/// Immutable lookup table of assets shared by the asset-data implementation.
class AssetCatalog {
 public:
  AssetCatalog() = default;
  explicit AssetCatalog(std::vector<AssetRecord> assets);
  const AssetRecord& get(const std::string& assetId) const;
  std::vector<std::string> ids() const;

 private:
  std::map<std::string, AssetRecord, std::less<>> assets_;
};

struct BearingPluginOptions {
  double searchTolerance = kDefaultSearchTolerance;
  SelectionOptions selection{};
};

inline constexpr const char* kBearingPluginName = "bearing";

/// Registers the bearing implementations of all five interfaces under
/// the name "bearing".
void registerBearingPlugin(Registry& registry, std::shared_ptr<const AssetCatalog> assets,
                           BearingPluginOptions options = {});

// ---------------------------------------------------------------------------
// Condition analyzer

struct PipelineSelection {
  std::string measurementData = kBearingPluginName;
  std::string assetData = kBearingPluginName;
  std::string featureExtractor = kBearingPluginName;
  std::string faultDetector = kBearingPluginName;
  std::string rulAlgorithm = kBearingPluginName;
};

struct AnalysisOptions {
  /// Leading records presumed healthy for the alarm baseline.
  std::size_t baselineCount = 50;
  PipelineSelection plugins{};
  /// Trend smoothing applied to the degradation feature before RUL fitting.
  int smoothingWindow = 20;
  double resampleStepHours = 10.0 / 60.0;
};

/// Wall-clock seconds per phase (monotonic clock).
struct PhaseTimings {
  double loadData = 0.0;
  double featureExtraction = 0.0;
  double faultDetection = 0.0;
  std::optional<double> rulEstimation{};
  bool rulSkipped = true;
  double total = 0.0;
};

struct AnalysisOutcome {
  std::string assetId;
  std::uint64_t seed = 0;
  double alarmLevel = 0.0;
  FaultStatus faultStatus;
  std::optional<std::size_t> firstDetectionIndex{};
  std::optional<RULResult> rul{};
  std::optional<GoodnessReport> goodness{};
  /// Smoothed degradation feature the RUL estimate was computed on.
  std::optional<FeatureSeries> degradationSeries{};
  PhaseTimings timings;
  std::vector<FaultStatus> statuses;
  std::vector<FeatureVector> features;
};

/// An analysis phase failed; carries the timings gathered up to the failure.
class PhaseError : public Error {
 public:
  PhaseError(std::string phase, ErrorKind cause, const std::string& message,
             PhaseTimings partial)
      : Error(ErrorKind::Phase, phase + ": " + message),
        phase_(std::move(phase)),
        cause_(cause),
        partial_(partial) {}

  const std::string& phase() const noexcept { return phase_; }
  ErrorKind cause() const noexcept { return cause_; }
  const PhaseTimings& partialTimings() const noexcept { return partial_; }

 private:
  std::string phase_;
  ErrorKind cause_;
  PhaseTimings partial_;
};

/// Resamples `feature` onto a uniform grid, smooths it with a centered moving
/// average (window clamped to the series length) and keeps the part from
/// `fromHours` on. Falls back to the whole trend when fewer than three
/// points remain.
FeatureSeries degradationTrend(const FeatureSeries& feature, double stepHours, int window,
                               double fromHours = 0.0);

/// Adds a constant so that every value is positive; returns the constant
/// (0 when the series already is).
double shiftPositive(FeatureSeries& series);

/// Runs load -> features -> detection -> (only when faulty) degradation
/// feature selection and RUL estimation, timing each phase.
class ConditionAnalyzer {
 public:
  explicit ConditionAnalyzer(const Registry& registry, AnalysisOptions options = {})
      : registry_(registry), options_(std::move(options)) {}

  AnalysisOutcome analyze(const std::string& assetId, const MeasurementSource& source,
                          const MetaParameters& meta, std::uint64_t seed) const;

 private:
  const Registry& registry_;
  AnalysisOptions options_;
};

AnalysisOutcome analyzeCondition(const std::string& assetId, const Registry& registry,
                                 const MeasurementSource& source, const MetaParameters& meta,
                                 std::uint64_t seed, const AnalysisOptions& options = {});

// ---------------------------------------------------------------------------
// Configuration audit

struct AuditEntry {
  std::string name;
  std::string value;
  bool isDefault = true;
  std::string note;
};

struct AuditReport {
  std::vector<AuditEntry> entries;
  std::size_t count() const noexcept { return entries.size(); }
};

AuditReport configAudit(const MetaParameters& meta);

}  // namespace tribo
