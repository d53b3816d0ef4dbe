#pragma once

#include <cstdint>
#include <string>

namespace trafficast {

/// Parse "2018-07-22T00:00:00Z" (seconds optional) to Unix epoch seconds.
/// Throws ValidationError on malformed input.
std::int64_t parse_iso8601_utc(const std::string& s);

/// Format Unix epoch seconds as "2018-07-22T00:00:00Z".
std::string format_iso8601_utc(std::int64_t epoch_s);

} // namespace trafficast
