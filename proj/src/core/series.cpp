#include "trafficast/core/series.hpp"

#include <cmath>
#include <fstream>

#include "trafficast/util/binio.hpp"

namespace trafficast {

void SeriesSet::insert(SpeedSeries s) {
    if (s.values.size() != axis_.count() ||
        s.mask.size() != static_cast<std::size_t>(axis_.count()))
        throw ValidationError("series for link " + std::to_string(s.link_id) +
                              " does not match the set's time axis");
    LinkId id = s.link_id;
    if (!series_.emplace(id, std::move(s)).second)
        throw ValidationError("duplicate series for link " + std::to_string(id));
}

const SpeedSeries& SeriesSet::at(LinkId id) const {
    auto it = series_.find(id);
    if (it == series_.end()) throw ValidationError("no series for link " + std::to_string(id));
    return it->second;
}

SpeedSeries& SeriesSet::at(LinkId id) {
    auto it = series_.find(id);
    if (it == series_.end()) throw ValidationError("no series for link " + std::to_string(id));
    return it->second;
}

std::vector<LinkId> SeriesSet::link_ids() const {
    std::vector<LinkId> ids;
    ids.reserve(series_.size());
    for (const auto& [id, s] : series_) ids.push_back(id);
    return ids;
}

SeriesSet SeriesSet::slice(std::int64_t t0, std::int64_t t1) const {
    if (t0 < 0 || t1 > axis_.count() || t0 > t1)
        throw ValidationError("bad slice range [" + std::to_string(t0) + ", " +
                              std::to_string(t1) + ")");
    SeriesSet out(TimeAxis(axis_.start() + t0 * kStepSeconds, t1 - t0));
    for (const auto& [id, s] : series_) {
        SpeedSeries sub;
        sub.link_id = id;
        sub.values = s.values.segment(t0, t1 - t0);
        sub.mask.assign(s.mask.begin() + t0, s.mask.begin() + t1);
        out.insert(std::move(sub));
    }
    return out;
}

void SeriesSet::validate(double max_speed_kmh) const {
    for (const auto& [id, s] : series_) {
        if (s.values.size() != axis_.count() ||
            s.mask.size() != static_cast<std::size_t>(axis_.count()))
            throw ValidationError("series for link " + std::to_string(id) +
                                  " has inconsistent length");
        for (std::int64_t t = 0; t < s.values.size(); ++t) {
            if (!s.mask[static_cast<std::size_t>(t)]) continue;
            double v = s.values[t];
            if (!std::isfinite(v) || v < 0.0 || v > max_speed_kmh)
                throw ValidationError("link " + std::to_string(id) + " index " +
                                      std::to_string(t) + ": speed " + std::to_string(v) +
                                      " outside [0, " + std::to_string(max_speed_kmh) + "]");
        }
    }
}

void write_series_set(const SeriesSet& set, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open file for writing: " + path);
    binio::write_magic(os, "TFSS1");
    binio::write_i64(os, set.axis().start());
    binio::write_i64(os, set.axis().count());
    binio::write_i64(os, static_cast<std::int64_t>(set.size()));
    for (const auto& [id, s] : set.all()) {
        binio::write_i64(os, id);
        binio::write_raw(os, s.values.data(), static_cast<std::size_t>(s.values.size()) * 8);
        binio::write_raw(os, s.mask.data(), s.mask.size());
    }
}

SeriesSet read_series_set(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open file: " + path);
    binio::expect_magic(is, "TFSS1", path.c_str());
    std::int64_t start = binio::read_i64(is);
    std::int64_t count = binio::read_i64(is);
    std::int64_t n_links = binio::read_i64(is);
    SeriesSet set(TimeAxis(start, count));
    for (std::int64_t i = 0; i < n_links; ++i) {
        SpeedSeries s;
        s.link_id = binio::read_i64(is);
        s.values.resize(count);
        binio::read_raw(is, s.values.data(), static_cast<std::size_t>(count) * 8);
        s.mask.resize(static_cast<std::size_t>(count));
        binio::read_raw(is, s.mask.data(), s.mask.size());
        set.insert(std::move(s));
    }
    return set;
}

} // namespace trafficast
