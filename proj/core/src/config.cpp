#include "tribo/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "tribo/error.hpp"

namespace tribo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string readWholeFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double toDouble(const std::string& key, const KeyValueEntry& e) {
  const auto text = trim(e.value);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("line " + std::to_string(e.line) + ": '" + key +
                         "' expects a number, got '" + e.value + "'",
                     e.line);
  }
  return v;
}

long long toInteger(const std::string& key, const KeyValueEntry& e) {
  const auto text = trim(e.value);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("line " + std::to_string(e.line) + ": '" + key +
                         "' expects an integer, got '" + e.value + "'",
                     e.line);
  }
  return v;
}

std::vector<double> toList(const std::string& key, const KeyValueEntry& e,
                           std::size_t expected) {
  std::vector<double> out;
  std::string_view rest = e.value;
  while (true) {
    const auto comma = rest.find(',');
    KeyValueEntry item{std::string(trim(rest.substr(0, comma))), e.line};
    out.push_back(toDouble(key, item));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.size() != expected) {
    throw ParseError("line " + std::to_string(e.line) + ": '" + key + "' expects " +
                         std::to_string(expected) + " comma-separated numbers",
                     e.line);
  }
  return out;
}

void rejectUnknown(const KeyValueMap& kv, std::initializer_list<std::string_view> known,
                   std::string_view what) {
  for (const auto& [key, entry] : kv) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) {
      throw Error(ErrorKind::Configuration, "line " + std::to_string(entry.line) +
                                                ": unknown " + std::string(what) +
                                                " key '" + key + "'");
    }
  }
}

std::string shortest(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

KeyValueMap parseKeyValueText(std::string_view text) {
  KeyValueMap out;
  std::size_t lineNo = 0;
  while (!text.empty()) {
    ++lineNo;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(lineNo) + ": expected 'key = value'", lineNo);
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw ParseError("line " + std::to_string(lineNo) + ": empty key", lineNo);
    }
    if (out.contains(key)) {
      throw ParseError("line " + std::to_string(lineNo) + ": duplicate key '" + key + "'",
                       lineNo);
    }
    out.emplace(std::move(key), KeyValueEntry{std::move(value), lineNo});
  }
  return out;
}

KeyValueMap readKeyValueFile(const std::filesystem::path& path) {
  return parseKeyValueText(readWholeFile(path));
}

AssetRecord parseAssetConfig(std::string_view text) {
  const auto kv = parseKeyValueText(text);
  rejectUnknown(kv,
                {"assetId", "rollerCount", "rollerDiameter", "pitchDiameter",
                 "contactAngle", "shaftRate", "channel"},
                "asset");
  auto require = [&](const std::string& key) -> const KeyValueEntry& {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw Error(ErrorKind::Configuration, "asset config is missing '" + key + "'");
    }
    return it->second;
  };

  AssetRecord asset;
  asset.assetId = require("assetId").value;
  asset.geometry.rollerCount = static_cast<int>(toInteger("rollerCount", require("rollerCount")));
  asset.geometry.rollerDiameter = toDouble("rollerDiameter", require("rollerDiameter"));
  asset.geometry.pitchDiameter = toDouble("pitchDiameter", require("pitchDiameter"));
  asset.geometry.contactAngle = toDouble("contactAngle", require("contactAngle"));
  asset.shaftRate = toDouble("shaftRate", require("shaftRate"));
  if (auto it = kv.find("channel"); it != kv.end()) {
    const auto ch = toInteger("channel", it->second);
    if (ch < 0) throw Error(ErrorKind::Configuration, "channel must be >= 0");
    asset.channel = static_cast<std::size_t>(ch);
  }
  asset.validate();
  return asset;
}

AssetRecord loadAssetConfig(const std::filesystem::path& path) {
  return parseAssetConfig(readWholeFile(path));
}

MetaParameters parseMetaConfig(std::string_view text) {
  const auto kv = parseKeyValueText(text);
  rejectUnknown(kv,
                {"alarmLevelFault", "motherWavelet", "nOfDecompLevels", "degParamWeights",
                 "alarmLevelRUL", "RULmodelParameters", "nOfSimulations"},
                "meta-parameter");
  MetaParameters m;
  for (const auto& [key, e] : kv) {
    if (key == "alarmLevelFault") {
      m.alarmLevelFault = toDouble(key, e);
    } else if (key == "motherWavelet") {
      m.motherWavelet = e.value;
    } else if (key == "nOfDecompLevels") {
      m.nOfDecompLevels = static_cast<int>(toInteger(key, e));
    } else if (key == "degParamWeights") {
      const auto w = toList(key, e, 3);
      m.degParamWeights = {w[0], w[1], w[2]};
    } else if (key == "alarmLevelRUL") {
      m.alarmLevelRUL = toDouble(key, e);
    } else if (key == "RULmodelParameters") {
      if (!e.value.empty()) {
        const auto p = toList(key, e, 3);
        m.rulModelParameters = DegradationModel{p[0], p[1], p[2]};
      }
    } else if (key == "nOfSimulations") {
      m.nOfSimulations = static_cast<int>(toInteger(key, e));
    }
  }
  return m.validated();
}

MetaParameters loadMetaConfig(const std::filesystem::path& path) {
  return parseMetaConfig(readWholeFile(path));
}

std::string formatAssetConfig(const AssetRecord& a) {
  std::ostringstream os;
  os << "assetId = " << a.assetId << '\n'
     << "rollerCount = " << a.geometry.rollerCount << '\n'
     << "rollerDiameter = " << shortest(a.geometry.rollerDiameter) << "  # mm\n"
     << "pitchDiameter = " << shortest(a.geometry.pitchDiameter) << "  # mm\n"
     << "contactAngle = " << shortest(a.geometry.contactAngle) << "  # degrees\n"
     << "shaftRate = " << shortest(a.shaftRate) << "  # Hz\n"
     << "channel = " << a.channel << '\n';
  return os.str();
}

std::string formatMetaConfig(const MetaParameters& m) {
  std::ostringstream os;
  const auto& w = m.degParamWeights;
  os << "alarmLevelFault = " << shortest(m.alarmLevelFault) << '\n'
     << "motherWavelet = " << m.motherWavelet << '\n'
     << "nOfDecompLevels = " << m.nOfDecompLevels << '\n'
     << "degParamWeights = " << shortest(w.corr) << ", " << shortest(w.mon) << ", "
     << shortest(w.rob) << '\n'
     << "alarmLevelRUL = " << shortest(m.alarmLevelRUL) << '\n';
  if (m.rulModelParameters) {
    const auto& p = *m.rulModelParameters;
    os << "RULmodelParameters = " << shortest(p.c) << ", " << shortest(p.b) << ", "
       << shortest(p.sigma2) << '\n';
  } else {
    os << "RULmodelParameters =\n";
  }
  os << "nOfSimulations = " << m.nOfSimulations << '\n';
  return os.str();
}

}  // namespace tribo
