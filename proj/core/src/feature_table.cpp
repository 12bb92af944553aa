#include <charconv>
#include <fstream>
#include <sstream>

#include "tribo/error.hpp"
#include "tribo/io.hpp"

namespace tribo {

namespace fs = std::filesystem;

std::string formatDouble17(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string featureTableHeader() {
  std::string header = "timestamp";
  for (int id = 1; id <= kFeatureCount; ++id) {
    header += ',';
    header += featureName(id);
  }
  return header;
}

void writeFeatureTable(std::span<const FeatureVector> vectors, const fs::path& file) {
  if (vectors.empty()) throw Error(ErrorKind::InvalidInput, "no feature vectors to write");
  std::ofstream os(file, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot write " + file.string());
  os << featureTableHeader() << '\n';
  for (const auto& v : vectors) {
    os << formatIso8601(v.timestamp);
    for (const auto& value : v.values) {
      os << ',';
      if (value) os << formatDouble17(*value);
    }
    os << '\n';
  }
  if (!os) throw Error(ErrorKind::Io, "failed writing " + file.string());
}

namespace {

std::vector<std::string_view> splitCommas(std::string_view line) {
  std::vector<std::string_view> cells;
  while (true) {
    const auto comma = line.find(',');
    cells.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return cells;
}

}  // namespace

std::vector<FeatureVector> readFeatureTable(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + file.string());

  std::string line;
  if (!std::getline(in, line) || line.empty()) {
    throw Error(ErrorKind::Schema, file.string() + ": missing header row");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto expected = featureTableHeader();
  const auto got = splitCommas(line);
  const auto want = splitCommas(expected);
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (i >= got.size() || got[i] != want[i]) {
      throw Error(ErrorKind::Schema, file.string() + ": header column " + std::to_string(i + 1) +
                                         " should be '" + std::string(want[i]) + "'");
    }
  }
  if (got.size() != want.size()) {
    throw Error(ErrorKind::Schema, file.string() + ": unexpected extra column '" +
                                       std::string(got[want.size()]) + "'");
  }

  std::vector<FeatureVector> out;
  std::size_t lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = splitCommas(line);
    if (cells.size() != want.size()) {
      throw ParseError(file.string() + ": line " + std::to_string(lineNo) + ": expected " +
                           std::to_string(want.size()) + " cells",
                       lineNo);
    }
    FeatureVector v;
    v.timestamp = parseIso8601(cells[0]);
    for (int id = 1; id <= kFeatureCount; ++id) {
      const auto cell = cells[static_cast<std::size_t>(id)];
      if (cell.empty()) continue;
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw ParseError(file.string() + ": line " + std::to_string(lineNo) + ": bad value for '" +
                             std::string(featureName(id)) + "'",
                         lineNo);
      }
      v.set(id, value);
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace tribo
