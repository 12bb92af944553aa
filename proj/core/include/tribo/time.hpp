#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace tribo {

/// UTC instant with microsecond resolution.
using Instant = std::chrono::sys_time<std::chrono::microseconds>;

/// Formats as ISO-8601 `YYYY-MM-DDThh:mm:ss.ffffffZ`.
std::string formatIso8601(Instant t);

/// Parses `YYYY-MM-DDThh:mm:ss[.f{1,6}]Z`. Throws ParseError.
Instant parseIso8601(std::string_view text);

Instant makeInstant(int year, unsigned month, unsigned day, int hour = 0,
                    int minute = 0, int second = 0);

double hoursBetween(Instant from, Instant to);
Instant addHours(Instant t, double hours);

}  // namespace tribo
