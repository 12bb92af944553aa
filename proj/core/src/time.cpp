#include "tribo/time.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "tribo/error.hpp"

namespace tribo {

namespace chr = std::chrono;

std::string formatIso8601(Instant t) {
  const auto day = chr::floor<chr::days>(t);
  const chr::year_month_day ymd{day};
  const chr::hh_mm_ss hms{t - day};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%06lldZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()),
                static_cast<long long>(hms.subseconds().count()));
  return buf;
}

namespace {

int readDigits(std::string_view text, std::size_t pos, std::size_t count) {
  if (pos + count > text.size()) {
    throw ParseError("truncated timestamp '" + std::string(text) + "'");
  }
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data() + pos, text.data() + pos + count, value);
  if (ec != std::errc{} || ptr != text.data() + pos + count) {
    throw ParseError("malformed timestamp '" + std::string(text) + "'");
  }
  return value;
}

void expectChar(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c) {
    throw ParseError("malformed timestamp '" + std::string(text) + "'");
  }
}

}  // namespace

Instant parseIso8601(std::string_view text) {
  const int year = readDigits(text, 0, 4);
  expectChar(text, 4, '-');
  const int month = readDigits(text, 5, 2);
  expectChar(text, 7, '-');
  const int day = readDigits(text, 8, 2);
  expectChar(text, 10, 'T');
  const int hour = readDigits(text, 11, 2);
  expectChar(text, 13, ':');
  const int minute = readDigits(text, 14, 2);
  expectChar(text, 16, ':');
  const int second = readDigits(text, 17, 2);
  std::size_t pos = 19;
  long long micros = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::size_t digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (digits == 6) throw ParseError("sub-microsecond timestamp '" + std::string(text) + "'");
      micros = micros * 10 + (text[pos] - '0');
      ++digits;
      ++pos;
    }
    if (digits == 0) throw ParseError("malformed timestamp '" + std::string(text) + "'");
    for (; digits < 6; ++digits) micros *= 10;
  }
  expectChar(text, pos, 'Z');
  if (pos + 1 != text.size()) {
    throw ParseError("trailing characters in timestamp '" + std::string(text) + "'");
  }
  const chr::year_month_day ymd{chr::year{year}, chr::month{static_cast<unsigned>(month)},
                                chr::day{static_cast<unsigned>(day)}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 60) {
    throw ParseError("invalid calendar value in '" + std::string(text) + "'");
  }
  return Instant{chr::sys_days{ymd}} + chr::hours{hour} + chr::minutes{minute} +
         chr::seconds{second} + chr::microseconds{micros};
}

Instant makeInstant(int year, unsigned month, unsigned day, int hour, int minute,
                    int second) {
  const chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
  return Instant{chr::sys_days{ymd}} + chr::hours{hour} + chr::minutes{minute} +
         chr::seconds{second};
}

double hoursBetween(Instant from, Instant to) {
  return chr::duration<double, std::ratio<3600>>(to - from).count();
}

Instant addHours(Instant t, double hours) {
  const double micros = std::round(hours * 3.6e9);
  return t + chr::microseconds{static_cast<long long>(micros)};
}

}  // namespace tribo
