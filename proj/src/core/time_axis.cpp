#include "trafficast/core/time_axis.hpp"

namespace trafficast {

WeekdaySlot weekday_slot(std::int64_t t, const TimeAxis& axis) {
    std::int64_t ts = axis.timestamp(t); // throws on out-of-range index
    std::int64_t days = ts / 86400;
    // Unix day 0 (1970-01-01) was a Thursday; Sunday-origin weekday needs +4.
    int dow = static_cast<int>((days + 4) % 7);
    int slot = static_cast<int>((ts % 86400) / kStepSeconds);
    return {dow, slot};
}

std::int64_t week_slot(std::int64_t t, const TimeAxis& axis) {
    WeekdaySlot ws = weekday_slot(t, axis);
    return static_cast<std::int64_t>(ws.day_of_week) * kStepsPerDay + ws.slot_of_day;
}

LagIndices lag_indices(std::int64_t t) {
    if (t < kStepsPerWeek)
        throw ValidationError("insufficient history: need one full week before index " +
                              std::to_string(t));
    return {t - kStepsPerDay, t - kStepsPerWeek};
}

} // namespace trafficast
