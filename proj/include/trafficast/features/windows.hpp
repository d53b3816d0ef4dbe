#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "trafficast/core/series.hpp"

namespace trafficast {

/// Window sizes, in 15-minute steps: w_n recent observations, 2*w_d around the
/// same time the day before, 2*w_w around the same time the week before.
struct WindowParams {
    int w_n = 24;
    int w_d = 8;
    int w_w = 4;

    void validate() const {
        if (w_n < 1 || w_d < 1 || w_w < 1)
            throw ValidationError("window sizes must be >= 1");
        // keeps every referenced index at or before the origin
        if (w_d > kStepsPerDay)
            throw ValidationError("w_d must not exceed one day of steps");
        if (w_w > kStepsPerWeek)
            throw ValidationError("w_w must not exceed one week of steps");
    }

    int speed_feature_dim() const { return 2 * w_w + 2 * w_d + w_n; }
    int feature_dim() const { return speed_feature_dim() + kContextDim; }

    /// Smallest origin with a full week-lag window available.
    std::int64_t min_origin() const { return kStepsPerWeek + w_w; }

    static constexpr int kContextDim = 4; // sin/cos of slot-of-day and day-of-week

    bool operator==(const WindowParams& o) const {
        return w_n == o.w_n && w_d == o.w_d && w_w == o.w_w;
    }
};

/// Inclusive index range [lo, hi].
struct IndexRange {
    std::int64_t lo;
    std::int64_t hi;
};

struct WindowIndexRanges {
    IndexRange weekly; // 2*w_w points centered past t-672
    IndexRange daily;  // 2*w_d points centered past t-96
    IndexRange recent; // w_n points ending at t

    /// Largest index any window touches; must never exceed the origin.
    std::int64_t max_index() const { return std::max({weekly.hi, daily.hi, recent.hi}); }
    std::int64_t min_index() const { return std::min({weekly.lo, daily.lo, recent.lo}); }
};

/// The exact index arithmetic shared by feature extraction and the leakage
/// guard: recent = [t-w_n+1, t], daily = [t-96-w_d+1, t-96+w_d],
/// weekly = [t-672-w_w+1, t-672+w_w].
WindowIndexRanges window_index_ranges(std::int64_t t, const WindowParams& params);

/// Stacked per-link input: weekly window, daily window, recent window, then
/// cyclic context features.
struct FeatureVector {
    Eigen::VectorXd x_w;     // length 2*w_w
    Eigen::VectorXd x_d;     // length 2*w_d
    Eigen::VectorXd x_n;     // length w_n
    Eigen::VectorXd context; // length 4

    Eigen::VectorXd stacked() const;
};

/// Cyclic encoding [sin, cos](2*pi*slot/96), [sin, cos](2*pi*day/7).
Eigen::Vector4d context_features(std::int64_t t, const TimeAxis& axis);

/// Extract the three windows plus context for one link at origin t.
/// Requires t >= 672 + w_w and t within the axis.
FeatureVector build_windows(const SeriesSet& set, LinkId link, std::int64_t t,
                            const WindowParams& params);

} // namespace trafficast
