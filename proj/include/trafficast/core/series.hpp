#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trafficast/core/graph.hpp"
#include "trafficast/core/time_axis.hpp"

namespace trafficast {

/// Hard sanity ceiling for observed speeds; configurable at ingest.
inline constexpr double kDefaultMaxSpeedKmh = 250.0;

/// Speed series of one link on a TimeAxis. mask[t] is true for points backed
/// by real observations, false for missing/imputed ones.
struct SpeedSeries {
    LinkId link_id = 0;
    Eigen::VectorXd values;
    std::vector<std::uint8_t> mask;

    std::int64_t size() const { return values.size(); }

    double missing_fraction() const {
        if (mask.empty()) return 1.0;
        std::int64_t missing = 0;
        for (auto m : mask) missing += (m == 0);
        return static_cast<double>(missing) / static_cast<double>(mask.size());
    }
};

/// All link series on one shared TimeAxis.
class SeriesSet {
public:
    SeriesSet() = default;
    explicit SeriesSet(TimeAxis axis) : axis_(axis) {}

    const TimeAxis& axis() const { return axis_; }

    void insert(SpeedSeries s);

    bool has(LinkId id) const { return series_.count(id) != 0; }
    const SpeedSeries& at(LinkId id) const;
    SpeedSeries& at(LinkId id);

    const std::map<LinkId, SpeedSeries>& all() const { return series_; }
    std::size_t size() const { return series_.size(); }

    std::vector<LinkId> link_ids() const;

    /// Copy of [t0, t1) on a fresh axis starting at t0's timestamp.
    SeriesSet slice(std::int64_t t0, std::int64_t t1) const;

    /// Check the shared-axis and value-range invariants; throws on violation.
    void validate(double max_speed_kmh = kDefaultMaxSpeedKmh) const;

private:
    TimeAxis axis_;
    std::map<LinkId, SpeedSeries> series_;
};

/// Binary SeriesSet container (magic TFSS1, little-endian).
void write_series_set(const SeriesSet& set, const std::string& path);
SeriesSet read_series_set(const std::string& path);

} // namespace trafficast
