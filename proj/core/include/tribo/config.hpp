#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "tribo/core.hpp"

namespace tribo {

/// `key = value` lines; `#` starts a comment, blank lines are ignored.
struct KeyValueEntry {
  std::string value;
  std::size_t line = 0;
};
using KeyValueMap = std::map<std::string, KeyValueEntry, std::less<>>;

KeyValueMap parseKeyValueText(std::string_view text);
KeyValueMap readKeyValueFile(const std::filesystem::path& path);

/// Asset keys: assetId, rollerCount, rollerDiameter [mm], pitchDiameter [mm],
/// contactAngle [deg], shaftRate [Hz], channel (0-based column).
AssetRecord parseAssetConfig(std::string_view text);
AssetRecord loadAssetConfig(const std::filesystem::path& path);

/// Meta keys are the seven parameter names: alarmLevelFault, motherWavelet,
/// nOfDecompLevels, degParamWeights (three comma-separated numbers),
/// alarmLevelRUL, RULmodelParameters (c, b, sigma2), nOfSimulations.
/// Missing keys keep their defaults; weights are normalized.
MetaParameters parseMetaConfig(std::string_view text);
MetaParameters loadMetaConfig(const std::filesystem::path& path);

std::string formatAssetConfig(const AssetRecord& asset);
std::string formatMetaConfig(const MetaParameters& meta);

}  // namespace tribo
