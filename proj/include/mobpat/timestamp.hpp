#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace mobpat {

using Timestamp = std::chrono::sys_seconds;

/// Accepts two layouts:
///   dataset: "Tue Apr 03 18:00:09 +0000 2012" (weekday must agree with the date)
///   ISO-8601: "2012-04-03T18:00:09Z", "...+02:00", "...-0500", or no zone (UTC)
/// Years outside 1990..2100 are rejected.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Dataset layout, always "+0000".
std::string format_dataset_time(Timestamp t);

std::string format_iso8601(Timestamp t);

}  // namespace mobpat
