#include <algorithm>

#include "tribo/framework.hpp"

namespace tribo {

DirectorySource::DirectorySource(const std::filesystem::path& dir, ImsReadOptions options)
    : run_(scanRunDirectory(dir, options)), options_(options) {}

std::vector<VibrationRecord> DirectorySource::read(std::size_t index) const {
  return readIMSRecord(run_.records.at(index).path, options_);
}

AssetCatalog::AssetCatalog(std::vector<AssetRecord> assets) {
  for (auto& a : assets) {
    a.validate();
    auto id = a.assetId;
    if (!assets_.emplace(id, std::move(a)).second) {
      throw Error(ErrorKind::Configuration, "duplicate asset id '" + id + "'");
    }
  }
}

const AssetRecord& AssetCatalog::get(const std::string& assetId) const {
  auto it = assets_.find(assetId);
  if (it == assets_.end()) {
    std::string known;
    for (const auto& [id, a] : assets_) known += (known.empty() ? "" : ", ") + id;
    throw Error(ErrorKind::Lookup, "unknown asset '" + assetId + "' (known: " +
                                       (known.empty() ? "none" : known) + ")");
  }
  return it->second;
}

std::vector<std::string> AssetCatalog::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, a] : assets_) out.push_back(id);
  return out;
}

namespace {

class VibrationData final : public IMeasurementData {
 public:
  std::vector<VibrationRecord> load(const MeasurementSource& source,
                                    const AssetRecord& asset) override {
    const std::size_t n = source.recordCount();
    if (n == 0) throw Error(ErrorKind::InvalidInput, "measurement source holds no records");
    std::vector<VibrationRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto snapshot = source.read(i);
      if (asset.channel >= snapshot.size()) {
        throw Error(ErrorKind::InvalidInput,
                    "asset channel " + std::to_string(asset.channel) + " not present in record " +
                        std::to_string(i) + " (" + std::to_string(snapshot.size()) + " channels)");
      }
      out.push_back(std::move(snapshot[asset.channel]));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return a.timestamp() < b.timestamp();
    });
    return out;
  }
};

class BearingData final : public IAssetData {
 public:
  explicit BearingData(std::shared_ptr<const AssetCatalog> catalog)
      : catalog_(std::move(catalog)) {}
  AssetRecord asset(const std::string& assetId) override { return catalog_->get(assetId); }

 private:
  std::shared_ptr<const AssetCatalog> catalog_;
};

class BearingFeatureExtractor final : public IFeatureExtractor {
 public:
  explicit BearingFeatureExtractor(SelectionOptions selection) : selection_(selection) {}

  FeatureVector extract(const VibrationRecord& record, const AssetRecord&,
                        const MetaParameters&) override {
    return timeDomainFeatures(record);
  }

  GoodnessReport selectDegradationFeature(std::span<const FeatureSeries> candidates,
                                          const MetaParameters& meta) override {
    return tribo::selectDegradationFeature(candidates, meta, selection_);
  }

 private:
  SelectionOptions selection_;
};

class EnvelopeWaveletDetector final : public IFaultDetector {
 public:
  explicit EnvelopeWaveletDetector(double tolerance) : tolerance_(tolerance) {}

  double calibrate(std::span<const VibrationRecord> baseline, const AssetRecord&,
                   const MetaParameters& meta) override {
    return steadyStateAlarmLevel(baseline, meta);
  }

  FaultStatus detect(const VibrationRecord& record, const AssetRecord& asset,
                     const MetaParameters& meta, double alarmLevel) override {
    return detectFault(record, asset.faultFrequencies(), meta, alarmLevel, tolerance_);
  }

 private:
  double tolerance_;
};

class MetropolisRUL final : public IRULalgorithm {
 public:
  RULResult estimate(const FeatureSeries& series, const MetaParameters& meta,
                     Instant lastMeasurement, std::uint64_t seed) override {
    return estimateRUL(series, meta, lastMeasurement, seed);
  }
};

}  // namespace

void registerBearingPlugin(Registry& registry, std::shared_ptr<const AssetCatalog> assets,
                           BearingPluginOptions options) {
  if (!assets) assets = std::make_shared<const AssetCatalog>();
  const std::string name = kBearingPluginName;
  registry.registerImplementation<IMeasurementData>(
      name, [] { return std::make_unique<VibrationData>(); });
  registry.registerImplementation<IAssetData>(
      name, [assets] { return std::make_unique<BearingData>(assets); });
  registry.registerImplementation<IFeatureExtractor>(name, [options] {
    return std::make_unique<BearingFeatureExtractor>(options.selection);
  });
  registry.registerImplementation<IFaultDetector>(name, [options] {
    return std::make_unique<EnvelopeWaveletDetector>(options.searchTolerance);
  });
  registry.registerImplementation<IRULalgorithm>(
      name, [] { return std::make_unique<MetropolisRUL>(); });
}

}  // namespace tribo
