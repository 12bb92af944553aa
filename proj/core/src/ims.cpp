#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tribo/error.hpp"
#include "tribo/io.hpp"

namespace tribo {

namespace fs = std::filesystem;

Instant parseImsTimestamp(std::string_view name) {
  int parts[6];
  std::size_t pos = 0;
  for (int i = 0; i < 6; ++i) {
    const std::size_t width = i == 0 ? 4 : 2;
    if (pos + width > name.size()) {
      throw ParseError("file name '" + std::string(name) + "' is not an IMS timestamp");
    }
    auto [ptr, ec] = std::from_chars(name.data() + pos, name.data() + pos + width, parts[i]);
    if (ec != std::errc{} || ptr != name.data() + pos + width) {
      throw ParseError("file name '" + std::string(name) + "' is not an IMS timestamp");
    }
    pos += width;
    if (i < 5) {
      if (pos >= name.size() || name[pos] != '.') {
        throw ParseError("file name '" + std::string(name) + "' is not an IMS timestamp");
      }
      ++pos;
    }
  }
  if (pos != name.size()) {
    throw ParseError("file name '" + std::string(name) + "' is not an IMS timestamp");
  }
  const std::chrono::year_month_day ymd{std::chrono::year{parts[0]},
                                        std::chrono::month{static_cast<unsigned>(parts[1])},
                                        std::chrono::day{static_cast<unsigned>(parts[2])}};
  if (!ymd.ok() || parts[3] > 23 || parts[4] > 59 || parts[5] > 59) {
    throw ParseError("file name '" + std::string(name) + "' has an invalid date");
  }
  return makeInstant(parts[0], static_cast<unsigned>(parts[1]), static_cast<unsigned>(parts[2]),
                     parts[3], parts[4], parts[5]);
}

std::string formatImsTimestamp(Instant t) {
  const auto iso = formatIso8601(t);  // YYYY-MM-DDThh:mm:ss.ffffffZ
  std::string out = iso.substr(0, 19);
  for (auto& ch : out) {
    if (ch == '-' || ch == 'T' || ch == ':') ch = '.';
  }
  return out;
}

namespace {

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool isBlank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

std::vector<VibrationRecord> readIMSRecord(const fs::path& file, const ImsReadOptions& options) {
  const Instant timestamp = parseImsTimestamp(file.filename().string());
  const std::string text = slurp(file);

  std::vector<std::vector<double>> columns;
  std::size_t lineNo = 0;
  std::size_t rows = 0;
  const char* p = text.data();
  const char* end = p + text.size();
  while (p < end) {
    ++lineNo;
    const char* eol = std::find(p, end, '\n');
    std::size_t col = 0;
    const char* q = p;
    while (true) {
      while (q < eol && isBlank(*q)) ++q;
      if (q >= eol) break;
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(q, eol, v);
      if (ec != std::errc{} || (ptr < eol && !isBlank(*ptr))) {
        throw ParseError(file.filename().string() + ": line " + std::to_string(lineNo) +
                             ": malformed number",
                         lineNo);
      }
      if (rows == 0) {
        columns.emplace_back();
        columns.back().reserve(options.expectedSamples);
      } else if (col >= columns.size()) {
        throw ParseError(file.filename().string() + ": line " + std::to_string(lineNo) +
                             ": expected " + std::to_string(columns.size()) + " columns",
                         lineNo);
      }
      columns[col].push_back(v);
      ++col;
      q = ptr;
    }
    if (col != 0) {
      if (col != columns.size()) {
        throw ParseError(file.filename().string() + ": line " + std::to_string(lineNo) +
                             ": expected " + std::to_string(columns.size()) + " columns, got " +
                             std::to_string(col),
                         lineNo);
      }
      ++rows;
    }
    p = eol < end ? eol + 1 : end;
  }
  if (rows != options.expectedSamples) {
    throw ParseError(file.filename().string() + ": expected " +
                         std::to_string(options.expectedSamples) + " rows, found " +
                         std::to_string(rows),
                     lineNo);
  }

  std::vector<VibrationRecord> records;
  records.reserve(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    records.emplace_back(timestamp, options.samplingRate, std::move(columns[c]),
                         "ch" + std::to_string(c + 1));
  }
  return records;
}

RunDirectory scanRunDirectory(const fs::path& dir, const ImsReadOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorKind::Io, "run directory " + dir.string() + " does not exist");
  }
  RunDirectory run;
  run.path = dir;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    try {
      run.records.push_back({entry.path(), parseImsTimestamp(entry.path().filename().string())});
    } catch (const ParseError&) {
      // Not a measurement file (configs, notes, ...).
    }
  }
  if (run.records.empty()) {
    throw Error(ErrorKind::Io, "run directory " + dir.string() + " holds no IMS records");
  }
  std::sort(run.records.begin(), run.records.end(),
            [](const RunFile& a, const RunFile& b) {
              return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : a.path < b.path;
            });

  std::ifstream first(run.records.front().path);
  std::string line;
  while (std::getline(first, line)) {
    std::istringstream ls(line);
    std::string token;
    std::size_t count = 0;
    while (ls >> token) ++count;
    if (count > 0) {
      run.channelsPerFile = count;
      break;
    }
  }
  run.samplesPerFile = options.expectedSamples;
  return run;
}

void writeIMSRecord(const fs::path& file, std::span<const std::vector<double>> channels) {
  if (channels.empty()) throw Error(ErrorKind::InvalidInput, "no channels to write");
  const std::size_t n = channels.front().size();
  for (const auto& ch : channels) {
    if (ch.size() != n) throw Error(ErrorKind::InvalidInput, "channel lengths differ");
  }
  std::string out;
  out.reserve(n * channels.size() * 9);
  char buf[32];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < channels.size(); ++c) {
      const int len = std::snprintf(buf, sizeof buf, "%.4f", channels[c][i]);
      out.append(buf, static_cast<std::size_t>(len));
      out.push_back(c + 1 < channels.size() ? '\t' : '\n');
    }
  }
  std::ofstream os(file, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot write " + file.string());
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw Error(ErrorKind::Io, "failed writing " + file.string());
}

}  // namespace tribo
