#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trafficast/core/series.hpp"
#include "trafficast/pipeline/observations.hpp"

namespace trafficast {

/// Drop observations whose speed equals the link's free-flow speed exactly and
/// that occur in runs of at least `min_run` consecutive identical values. Such
/// runs are vendor placeholders, not measurements; isolated matches are kept.
/// Throws if any observation references a link missing from the graph.
std::vector<RawObservation> remove_default_speeds(const std::vector<RawObservation>& obs,
                                                  const RoadGraph& graph, int min_run = 4);

/// Resample per-link observations onto the regular 15-minute grid. A grid
/// point is observed when raw points exist within 30 minutes on both sides
/// (an exact hit counts for both); its value is the linear interpolation
/// between the two nearest raw observations. Everything else is missing.
SeriesSet regularize(const std::vector<RawObservation>& obs, const TimeAxis& axis);

/// Fill missing interior runs by linear interpolation between the nearest
/// observed neighbors; leading/trailing runs take the nearest observed value.
/// Masks are preserved (imputed points stay mask=false). A series with no
/// observed point at all is an error.
SeriesSet fill_missing(const SeriesSet& set);

struct CoverageDrop {
    LinkId link_id;
    double missing_fraction;
};

struct CoverageResult {
    SeriesSet surviving;
    std::vector<CoverageDrop> dropped;
};

/// Drop links whose missing fraction (pre-fill) is >= threshold.
CoverageResult filter_coverage(const SeriesSet& set, double threshold = 0.20);

struct PipelineReport {
    std::int64_t observations_in = 0;
    std::int64_t default_speed_removed = 0;
    std::vector<CoverageDrop> dropped_links;
};

/// The full preprocessing chain in its fixed order:
/// remove_default_speeds -> regularize -> filter_coverage -> fill_missing.
/// The axis is derived from the observation span when not supplied.
SeriesSet preprocess(const std::vector<RawObservation>& obs, const RoadGraph& graph,
                     PipelineReport* report = nullptr, int default_min_run = 4,
                     double coverage_threshold = 0.20);

/// Axis covering [floor(min ts), ceil(max ts)] on the 15-minute grid.
TimeAxis axis_from_observations(const std::vector<RawObservation>& obs);

/// Standard sample autocorrelation at lags 0..max_lag (lag 0 = 1).
/// Throws on constant series or max_lag >= length.
Eigen::VectorXd autocorrelation(const Eigen::VectorXd& values, std::int64_t max_lag);

} // namespace trafficast
