#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trafficast/core/graph.hpp"

namespace trafficast {

/// One raw speed report. Timestamps are not necessarily on the 15-minute grid.
struct RawObservation {
    LinkId link_id;
    std::int64_t timestamp; // Unix epoch seconds, UTC
    double speed_kmh;
};

struct IngestResult {
    std::vector<RawObservation> observations; // file order
    std::int64_t malformed_rows = 0;
    std::int64_t total_rows = 0;
};

/// Read an observations CSV with header `segment_id,timestamp_utc,speed_kmh`.
/// Malformed rows (parse failures, negative or non-finite speeds) are counted
/// and dropped; more than 1% malformed rows fails the whole file.
IngestResult ingest_csv(const std::string& path, double max_speed_kmh = kDefaultMaxSpeedKmh);

/// Write the same format back (timestamps ISO-8601 with Z suffix).
void write_observations_csv(const std::vector<RawObservation>& obs, const std::string& path);

} // namespace trafficast
