#include "support/doctest.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "support/oracles.hpp"
#include "tribo/framework.hpp"
#include "tribo/report.hpp"
#include "tribo/time.hpp"

using namespace tribo;

namespace {

SyntheticRunSpec smallRun(bool faulty, std::uint64_t seed = 1) {
  SyntheticRunSpec spec;
  spec.records = 40;
  spec.faultOnset = faulty ? 20 : spec.records;
  spec.channels = 2;
  spec.seed = seed;
  spec.growthPerHour = 0.6;
  return spec;
}

AnalysisOptions smallOptions() {
  AnalysisOptions o;
  o.baselineCount = 15;
  return o;
}

MetaParameters quickMeta() {
  MetaParameters m;
  m.nOfSimulations = 2000;
  return m;
}

std::shared_ptr<Registry> bearingRegistry(const SyntheticRunSpec& spec) {
  auto r = std::make_shared<Registry>();
  registerBearingPlugin(*r, std::make_shared<AssetCatalog>(std::vector<AssetRecord>{spec.asset}));
  return r;
}

ErrorKind kindOf(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

// Records the order in which the analyzer calls into the plug-in.
struct CallLog {
  std::mutex m;
  std::vector<std::string> calls;
  void add(std::string s) {
    std::lock_guard lock(m);
    calls.push_back(std::move(s));
  }
};

class SpyAssets final : public IAssetData {
 public:
  SpyAssets(std::shared_ptr<CallLog> log, AssetRecord a) : log_(std::move(log)), a_(std::move(a)) {}
  AssetRecord asset(const std::string&) override {
    log_->add("asset");
    return a_;
  }

 private:
  std::shared_ptr<CallLog> log_;
  AssetRecord a_;
};

class SpyData final : public IMeasurementData {
 public:
  explicit SpyData(std::shared_ptr<CallLog> log) : log_(std::move(log)) {}
  std::vector<VibrationRecord> load(const MeasurementSource& s, const AssetRecord&) override {
    log_->add("load");
    std::vector<VibrationRecord> out;
    for (std::size_t i = 0; i < s.recordCount(); ++i) out.push_back(s.read(i).front());
    return out;
  }

 private:
  std::shared_ptr<CallLog> log_;
};

class SpyFeatures final : public IFeatureExtractor {
 public:
  explicit SpyFeatures(std::shared_ptr<CallLog> log) : log_(std::move(log)) {}
  FeatureVector extract(const VibrationRecord& r, const AssetRecord&,
                        const MetaParameters&) override {
    log_->add("extract");
    FeatureVector v;
    v.timestamp = r.timestamp();
    v.set(1, 1.0 + static_cast<double>(r.samples()[0] != 0.0));
    return v;
  }
  GoodnessReport selectDegradationFeature(std::span<const FeatureSeries>,
                                          const MetaParameters&) override {
    log_->add("select");
    GoodnessReport g;
    g.selectedFeatureId = 1;
    g.features.push_back({1, {1, 1, 1}, 1.0, false, {}});
    return g;
  }

 private:
  std::shared_ptr<CallLog> log_;
};

class SpyDetector final : public IFaultDetector {
 public:
  SpyDetector(std::shared_ptr<CallLog> log, bool faulty) : log_(std::move(log)), faulty_(faulty) {}
  double calibrate(std::span<const VibrationRecord>, const AssetRecord&,
                   const MetaParameters&) override {
    log_->add("calibrate");
    return 1.0;
  }
  FaultStatus detect(const VibrationRecord& r, const AssetRecord&, const MetaParameters&,
                     double alarm) override {
    log_->add("detect");
    FaultStatus s;
    s.isFaulty = faulty_;
    s.faultType = faulty_ ? FaultType::BPFO : FaultType::None;
    s.alarmLevel = alarm;
    s.detectionTime = r.timestamp();
    return s;
  }

 private:
  std::shared_ptr<CallLog> log_;
  bool faulty_;
};

class SpyRul final : public IRULalgorithm {
 public:
  explicit SpyRul(std::shared_ptr<CallLog> log) : log_(std::move(log)) {}
  RULResult estimate(const FeatureSeries&, const MetaParameters& meta, Instant last,
                     std::uint64_t seed) override {
    log_->add("estimate");
    RULResult r;
    r.lastMeasurement = last;
    r.crossing05 = r.crossing50 = r.crossing95 = r.lastOperationDate = last;
    r.alarmLevelRUL = meta.alarmLevelRUL;
    r.seed = seed;
    return r;
  }

 private:
  std::shared_ptr<CallLog> log_;
};

void registerSpies(Registry& r, const std::string& name, std::shared_ptr<CallLog> log,
                   AssetRecord asset, bool faulty) {
  r.registerImplementation<IAssetData>(
      name, [log, asset] { return std::make_unique<SpyAssets>(log, asset); });
  r.registerImplementation<IMeasurementData>(name,
                                             [log] { return std::make_unique<SpyData>(log); });
  r.registerImplementation<IFeatureExtractor>(
      name, [log] { return std::make_unique<SpyFeatures>(log); });
  r.registerImplementation<IFaultDetector>(
      name, [log, faulty] { return std::make_unique<SpyDetector>(log, faulty); });
  r.registerImplementation<IRULalgorithm>(name, [log] { return std::make_unique<SpyRul>(log); });
}

PipelineSelection all(const std::string& name) { return {name, name, name, name, name}; }

}  // namespace

TEST_CASE("register, resolve and describe") {
  Registry r;
  registerBearingPlugin(r, nullptr);
  auto a = r.resolve<IFaultDetector>("bearing");
  auto b = r.resolve<IFaultDetector>("bearing");
  CHECK(a != nullptr);
  CHECK(a.get() != b.get());
  const auto plugins = r.plugins();
  REQUIRE(plugins.size() == 1);
  CHECK(plugins[0].pluginName == "bearing");
  CHECK(plugins[0].provides.size() == kInterfaceCount);
  CHECK(r.names(InterfaceId::RULalgorithm) == std::vector<std::string>{"bearing"});
  CHECK(toString(InterfaceId::FeatureExtractor) == "FeatureExtractor");
}

TEST_CASE("duplicate registration and unknown names") {
  Registry r;
  registerBearingPlugin(r, nullptr);
  CHECK(kindOf([&] { registerBearingPlugin(r, nullptr); }) == ErrorKind::Registration);
  CHECK(kindOf([&] {
          r.registerImplementation<IRULalgorithm>("", [] { return std::unique_ptr<IRULalgorithm>(); });
        }) == ErrorKind::Registration);
  try {
    r.resolve<IFaultDetector>("gearbox");
    FAIL("expected a lookup error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Lookup);
    CHECK(std::string(e.what()).find("bearing") != std::string::npos);
  }
}

TEST_CASE("resolution is referentially transparent") {
  Registry r;
  registerBearingPlugin(r, nullptr);
  const auto f = computeFaultFrequencies(rexnordZA2115(), 33.3);
  AssetRecord asset{"a", rexnordZA2115(), 33.3, {}, 0};
  SyntheticFaultSpec spec;
  spec.faultFrequency = f.bpfo;
  spec.noiseStd = 0.05;
  const auto rec = synthesizeFaultSignal(spec);
  const auto s1 = r.resolve<IFaultDetector>("bearing")->detect(rec, asset, {}, 0.01);
  const auto s2 = r.resolve<IFaultDetector>("bearing")->detect(rec, asset, {}, 0.01);
  CHECK(s1.detectedAmplitude == s2.detectedAmplitude);
  CHECK(s1.faultType == s2.faultType);
}

TEST_CASE("registration while other threads resolve") {
  Registry r;
  registerBearingPlugin(r, nullptr);
  std::atomic<bool> stop{false};
  std::atomic<int> resolved{0};
  std::vector<std::thread> readers;
  for (int k = 0; k < 4; ++k) {
    readers.emplace_back([&] {
      while (!stop) {
        auto d = r.resolve<IRULalgorithm>("bearing");
        if (d) ++resolved;
      }
    });
  }
  while (resolved == 0) std::this_thread::yield();
  for (int i = 0; i < 200; ++i) {
    r.registerImplementation<IRULalgorithm>("extra" + std::to_string(i), [&r] {
      return r.resolve<IRULalgorithm>("bearing");
    });
  }
  stop = true;
  for (auto& t : readers) t.join();
  CHECK(resolved > 0);
  CHECK(r.names(InterfaceId::RULalgorithm).size() == 201);
  CHECK(r.resolve<IRULalgorithm>("extra7") != nullptr);
}

TEST_CASE("plug-in loaded from a shared library") {
  Registry r;
  loadPluginLibrary(r, TRIBO_TEST_PLUGIN_PATH);
  auto d = r.resolve<IFaultDetector>("peak-threshold");
  const VibrationRecord rec(makeInstant(2004, 2, 12), 100.0, {0.1, -4.0, 0.2});
  MetaParameters meta;
  const auto s = d->detect(rec, {}, meta, d->calibrate({}, {}, meta));
  CHECK(s.isFaulty);
  CHECK(s.detectedAmplitude == 4.0);
  CHECK(r.plugins().front().version == "0.1");
  CHECK(kindOf([&] { loadPluginLibrary(r, "/nonexistent/libnothing.so"); }) ==
        ErrorKind::Registration);
}

TEST_CASE("pipeline order and the negative-result rule") {
  const SyntheticRunSpec spec = smallRun(false);
  for (bool faulty : {false, true}) {
    Registry r;
    auto log = std::make_shared<CallLog>();
    registerSpies(r, "spy", log, spec.asset, faulty);
    AnalysisOptions o = smallOptions();
    o.plugins = all("spy");
    const auto out = analyzeCondition("x", r, SyntheticSource(spec), {}, 1, o);

    auto pos = [&](const std::string& what) {
      return std::find(log->calls.begin(), log->calls.end(), what) - log->calls.begin();
    };
    auto last = [&](const std::string& what) {
      return std::find(log->calls.rbegin(), log->calls.rend(), what).base() - log->calls.begin();
    };
    CHECK(pos("asset") < pos("load"));
    CHECK(last("load") <= pos("extract"));
    CHECK(last("extract") <= pos("calibrate"));
    CHECK(pos("calibrate") < pos("detect"));
    CHECK(std::count(log->calls.begin(), log->calls.end(), "detect") == 40);
    if (faulty) {
      CHECK(last("detect") <= pos("select"));
      CHECK(pos("select") < pos("estimate"));
      CHECK(out.rul.has_value());
      CHECK_FALSE(out.timings.rulSkipped);
    } else {
      CHECK(std::count(log->calls.begin(), log->calls.end(), "estimate") == 0);
      CHECK(std::count(log->calls.begin(), log->calls.end(), "select") == 0);
      CHECK_FALSE(out.rul.has_value());
      CHECK(out.timings.rulSkipped);
      CHECK_FALSE(out.timings.rulEstimation.has_value());
    }
  }
}

TEST_CASE("healthy synthetic run skips RUL") {
  const auto spec = smallRun(false);
  auto r = bearingRegistry(spec);
  const auto out =
      analyzeCondition(spec.asset.assetId, *r, SyntheticSource(spec), quickMeta(), 3, smallOptions());
  CHECK_FALSE(out.faultStatus.isFaulty);
  CHECK_FALSE(out.rul.has_value());
  CHECK_FALSE(out.goodness.has_value());
  CHECK(out.timings.rulSkipped);
  CHECK_FALSE(out.timings.rulEstimation.has_value());
  CHECK(out.statuses.size() == 40);
  CHECK(out.features.size() == 40);
  CHECK(toJson(out)["rulSkipped"] == true);
}

TEST_CASE("faulty synthetic run estimates RUL with all timings") {
  const auto spec = smallRun(true);
  auto r = bearingRegistry(spec);
  const auto out =
      analyzeCondition(spec.asset.assetId, *r, SyntheticSource(spec), quickMeta(), 3, smallOptions());
  CHECK(out.faultStatus.isFaulty);
  CHECK(out.faultStatus.faultType == FaultType::BPFO);
  REQUIRE(out.firstDetectionIndex.has_value());
  CHECK(*out.firstDetectionIndex >= 20);
  CHECK(*out.firstDetectionIndex <= 22);
  REQUIRE(out.rul.has_value());
  REQUIRE(out.goodness.has_value());
  CHECK(out.features.back().get(Feature::EnvelopeDefectAmplitude).has_value());
  const auto& t = out.timings;
  CHECK_FALSE(t.rulSkipped);
  REQUIRE(t.rulEstimation.has_value());
  for (double v : {t.loadData, t.featureExtraction, t.faultDetection, *t.rulEstimation}) {
    CHECK(v > 0.0);
  }
  CHECK(t.loadData + t.featureExtraction + t.faultDetection + *t.rulEstimation <= t.total);
  CHECK(out.rul->seed == 3);
}

TEST_CASE("outcome is deterministic given inputs and seed") {
  const auto spec = smallRun(true, 4);
  auto r = bearingRegistry(spec);
  const auto a =
      analyzeCondition(spec.asset.assetId, *r, SyntheticSource(spec), quickMeta(), 11, smallOptions());
  const auto b =
      analyzeCondition(spec.asset.assetId, *r, SyntheticSource(spec), quickMeta(), 11, smallOptions());
  CHECK(toJson(a).dump() == toJson(b).dump());
}

TEST_CASE("concurrent analyses are independent") {
  const auto s1 = smallRun(true, 5);
  auto s2 = smallRun(false, 6);
  s2.asset.assetId = "second";
  auto r = std::make_shared<Registry>();
  registerBearingPlugin(
      *r, std::make_shared<AssetCatalog>(std::vector<AssetRecord>{s1.asset, s2.asset}));
  const auto seq1 = toJson(analyzeCondition(s1.asset.assetId, *r, SyntheticSource(s1),
                                            quickMeta(), 2, smallOptions()))
                        .dump();
  const auto seq2 = toJson(analyzeCondition("second", *r, SyntheticSource(s2), quickMeta(), 2,
                                            smallOptions()))
                        .dump();
  std::string par1;
  std::string par2;
  std::thread t1([&] {
    par1 = toJson(analyzeCondition(s1.asset.assetId, *r, SyntheticSource(s1), quickMeta(), 2,
                                   smallOptions()))
               .dump();
  });
  std::thread t2([&] {
    par2 = toJson(analyzeCondition("second", *r, SyntheticSource(s2), quickMeta(), 2,
                                   smallOptions()))
               .dump();
  });
  t1.join();
  t2.join();
  CHECK(par1 == seq1);
  CHECK(par2 == seq2);
}

TEST_CASE("phase errors carry the phase name and partial timings") {
  const auto spec = smallRun(false);
  auto r = bearingRegistry(spec);
  try {
    analyzeCondition("nobody", *r, SyntheticSource(spec), {}, 1, smallOptions());
    FAIL("expected a phase error");
  } catch (const PhaseError& e) {
    CHECK(e.phase() == "loadData");
    CHECK(e.cause() == ErrorKind::Lookup);
  }

  AnalysisOptions o = smallOptions();
  o.plugins.faultDetector = "missing";
  try {
    analyzeCondition(spec.asset.assetId, *r, SyntheticSource(spec), {}, 1, o);
    FAIL("expected a phase error");
  } catch (const PhaseError& e) {
    CHECK(e.phase() == "faultDetection");
    CHECK(e.partialTimings().loadData > 0.0);
    CHECK(e.partialTimings().featureExtraction > 0.0);
  }

  MetaParameters deep;
  deep.nOfDecompLevels = 40;
  try {
    analyzeCondition(spec.asset.assetId, *r, SyntheticSource(spec), deep, 1, smallOptions());
    FAIL("expected a phase error");
  } catch (const PhaseError& e) {
    CHECK(e.phase() == "faultDetection");
    CHECK(e.cause() == ErrorKind::Configuration);
  }
}

TEST_CASE("configuration audit") {
  const auto d = configAudit(MetaParameters{});
  CHECK(d.count() == 7);
  for (const auto& e : d.entries) CHECK(e.isDefault);
  const auto rul = std::find_if(d.entries.begin(), d.entries.end(),
                                [](const auto& e) { return e.name == "RULmodelParameters"; });
  REQUIRE(rul != d.entries.end());
  CHECK(rul->note == "derived at run time from least squares");

  MetaParameters m;
  m.degParamWeights = {0.5, 0.25, 0.25};
  const auto a = configAudit(m);
  for (const auto& e : a.entries) CHECK(e.isDefault == (e.name != "degParamWeights"));
  CHECK(toJson(a)["count"] == 7);
}

TEST_CASE("timing aggregation") {
  std::vector<PhaseTimings> runs(3);
  runs[0] = {1.0, 2.0, 3.0, 4.0, false, 11.0};
  runs[1] = {3.0, 2.0, 3.0, std::nullopt, true, 9.0};
  runs[2] = {2.0, 2.0, 3.0, 6.0, false, 13.0};
  const auto rows = aggregateTimings(runs);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].phase == "loadData");
  CHECK(rows[0].mean == doctest::Approx(2.0));
  CHECK(rows[0].std == doctest::Approx(1.0));
  CHECK(rows[1].std == 0.0);
  CHECK(rows[3].phase == "rulEstimation");
  CHECK(rows[3].runs == 2);
  CHECK(rows[3].mean == doctest::Approx(5.0));
  const auto csv = perfTableCsv(rows);
  CHECK(csv.rfind("phase,mean_s,std_s,runs\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}
