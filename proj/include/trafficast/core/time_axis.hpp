#pragma once

#include <cstdint>

#include "trafficast/common.hpp"

namespace trafficast {

/// One 15-minute step.
inline constexpr std::int64_t kStepSeconds = 900;
/// Steps per day / per week at the 15-minute frequency.
inline constexpr std::int64_t kStepsPerDay = 96;
inline constexpr std::int64_t kStepsPerWeek = 672;

/// Regular 15-minute time grid. Immutable after construction.
class TimeAxis {
public:
    TimeAxis() = default;

    TimeAxis(std::int64_t start_epoch_s, std::int64_t count) : start_(start_epoch_s), count_(count) {
        if (start_ % kStepSeconds != 0)
            throw ValidationError("time axis start is not aligned to a 15-minute boundary");
        if (count_ < 0) throw ValidationError("time axis count must be non-negative");
    }

    std::int64_t start() const { return start_; }
    std::int64_t step() const { return kStepSeconds; }
    std::int64_t count() const { return count_; }

    bool contains(std::int64_t t) const { return t >= 0 && t < count_; }

    std::int64_t timestamp(std::int64_t t) const {
        if (!contains(t)) throw ValidationError("time index out of range: " + std::to_string(t));
        return start_ + t * kStepSeconds;
    }

    /// Inverse of timestamp(); throws if the epoch is off-grid or outside the axis.
    std::int64_t index_of(std::int64_t epoch_s) const {
        std::int64_t delta = epoch_s - start_;
        if (delta % kStepSeconds != 0)
            throw ValidationError("timestamp is not on the 15-minute grid");
        std::int64_t t = delta / kStepSeconds;
        if (!contains(t)) throw ValidationError("timestamp outside the time axis");
        return t;
    }

    bool operator==(const TimeAxis& o) const { return start_ == o.start_ && count_ == o.count_; }
    bool operator!=(const TimeAxis& o) const { return !(*this == o); }

private:
    std::int64_t start_ = 0;
    std::int64_t count_ = 0;
};

struct WeekdaySlot {
    int day_of_week;  // 0 = Sunday .. 6 = Saturday
    int slot_of_day;  // 0..95, (minutes since midnight) / 15
};

/// Weekday and 15-minute slot of time index t. Week origin is Sunday 00:00.
WeekdaySlot weekday_slot(std::int64_t t, const TimeAxis& axis);

/// Flattened weekly slot in [0, 672): day_of_week * 96 + slot_of_day.
std::int64_t week_slot(std::int64_t t, const TimeAxis& axis);

struct LagIndices {
    std::int64_t t_minus_d;  // same time the day before
    std::int64_t t_minus_w;  // same time the week before
};

/// Day-lag and week-lag indices. Requires one full week of history (t >= 672).
LagIndices lag_indices(std::int64_t t);

} // namespace trafficast
