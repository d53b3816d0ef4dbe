#include "trafficast/pipeline/observations.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "trafficast/util/csvio.hpp"
#include "trafficast/util/timefmt.hpp"

namespace trafficast {

IngestResult ingest_csv(const std::string& path, double max_speed_kmh) {
    std::vector<std::string> lines = read_lines(path);
    IngestResult res;
    if (lines.empty()) {
        std::cerr << "warning: observations file is empty: " << path << "\n";
        return res;
    }
    if (lines[0] != "segment_id,timestamp_utc,speed_kmh")
        throw ValidationError("observations csv has unexpected header: " + lines[0]);
    res.observations.reserve(lines.size());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        ++res.total_rows;
        auto f = split_csv_line(lines[i]);
        bool ok = f.size() == 3;
        RawObservation obs{};
        if (ok) {
            try {
                obs.link_id = std::stoll(f[0]);
                obs.timestamp = parse_iso8601_utc(f[1]);
                obs.speed_kmh = std::stod(f[2]);
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (ok && (!std::isfinite(obs.speed_kmh) || obs.speed_kmh < 0.0 ||
                   obs.speed_kmh > max_speed_kmh))
            ok = false;
        if (ok) {
            res.observations.push_back(obs);
        } else {
            ++res.malformed_rows;
        }
    }
    if (res.total_rows == 0) {
        std::cerr << "warning: observations file has no data rows: " << path << "\n";
        return res;
    }
    if (static_cast<double>(res.malformed_rows) > 0.01 * static_cast<double>(res.total_rows))
        throw ValidationError("observations csv: " + std::to_string(res.malformed_rows) + " of " +
                              std::to_string(res.total_rows) + " rows malformed (>1%)");
    return res;
}

void write_observations_csv(const std::vector<RawObservation>& obs, const std::string& path) {
    std::ostringstream os;
    os << "segment_id,timestamp_utc,speed_kmh\n";
    char buf[64];
    for (const auto& o : obs) {
        // %.17g round-trips doubles exactly; the default-speed removal rule
        // depends on speeds surviving a CSV round trip bit-identically
        std::snprintf(buf, sizeof(buf), "%.17g", o.speed_kmh);
        os << o.link_id << ',' << format_iso8601_utc(o.timestamp) << ',' << buf << '\n';
    }
    write_text_file(path, os.str());
}

} // namespace trafficast
