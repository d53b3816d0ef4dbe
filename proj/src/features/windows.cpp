#include "trafficast/features/windows.hpp"

#include <cmath>

namespace trafficast {

WindowIndexRanges window_index_ranges(std::int64_t t, const WindowParams& params) {
    WindowIndexRanges r;
    r.recent = {t - params.w_n + 1, t};
    r.daily = {t - kStepsPerDay - params.w_d + 1, t - kStepsPerDay + params.w_d};
    r.weekly = {t - kStepsPerWeek - params.w_w + 1, t - kStepsPerWeek + params.w_w};
    return r;
}

Eigen::VectorXd FeatureVector::stacked() const {
    Eigen::VectorXd out(x_w.size() + x_d.size() + x_n.size() + context.size());
    out << x_w, x_d, x_n, context;
    return out;
}

Eigen::Vector4d context_features(std::int64_t t, const TimeAxis& axis) {
    WeekdaySlot ws = weekday_slot(t, axis);
    constexpr double two_pi = 6.28318530717958647692529;
    double slot_angle = two_pi * static_cast<double>(ws.slot_of_day) / 96.0;
    double day_angle = two_pi * static_cast<double>(ws.day_of_week) / 7.0;
    return {std::sin(slot_angle), std::cos(slot_angle), std::sin(day_angle), std::cos(day_angle)};
}

FeatureVector build_windows(const SeriesSet& set, LinkId link, std::int64_t t,
                            const WindowParams& params) {
    params.validate();
    if (t < params.min_origin())
        throw ValidationError("insufficient history at index " + std::to_string(t) +
                              ": windows need a full week plus w_w");
    if (!set.axis().contains(t))
        throw ValidationError("origin index outside the time axis: " + std::to_string(t));

    const SpeedSeries& s = set.at(link);
    WindowIndexRanges r = window_index_ranges(t, params);

    FeatureVector f;
    f.x_w = s.values.segment(r.weekly.lo, r.weekly.hi - r.weekly.lo + 1);
    f.x_d = s.values.segment(r.daily.lo, r.daily.hi - r.daily.lo + 1);
    f.x_n = s.values.segment(r.recent.lo, r.recent.hi - r.recent.lo + 1);
    f.context = context_features(t, set.axis());
    return f;
}

} // namespace trafficast
