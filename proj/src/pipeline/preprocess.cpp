#include "trafficast/pipeline/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace trafficast {
namespace {

constexpr std::int64_t kInterpWindowSeconds = 1800; // +/- 30 min

// observation indices per link, ordered by timestamp (stable on ties)
std::map<LinkId, std::vector<std::size_t>> group_by_link(const std::vector<RawObservation>& obs) {
    std::map<LinkId, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < obs.size(); ++i) groups[obs[i].link_id].push_back(i);
    for (auto& [id, idx] : groups) {
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return obs[a].timestamp < obs[b].timestamp;
        });
    }
    return groups;
}

} // namespace

std::vector<RawObservation> remove_default_speeds(const std::vector<RawObservation>& obs,
                                                  const RoadGraph& graph, int min_run) {
    std::set<LinkId> unknown;
    for (const auto& o : obs)
        if (!graph.has_link(o.link_id)) unknown.insert(o.link_id);
    if (!unknown.empty()) {
        std::ostringstream msg;
        msg << "observations reference unknown link ids:";
        for (LinkId id : unknown) msg << ' ' << id;
        throw ValidationError(msg.str());
    }

    std::vector<bool> drop(obs.size(), false);
    for (const auto& [id, idx] : group_by_link(obs)) {
        const double free_flow = graph.link(id).free_flow_kmh;
        std::size_t run_start = 0;
        std::size_t n = idx.size();
        for (std::size_t i = 0; i <= n; ++i) {
            bool at_default = i < n && obs[idx[i]].speed_kmh == free_flow;
            if (at_default) continue;
            // [run_start, i) was a run of exact free-flow values
            if (i - run_start >= static_cast<std::size_t>(min_run)) {
                for (std::size_t j = run_start; j < i; ++j) drop[idx[j]] = true;
            }
            run_start = i + 1;
        }
    }

    std::vector<RawObservation> out;
    out.reserve(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i)
        if (!drop[i]) out.push_back(obs[i]);
    return out;
}

TimeAxis axis_from_observations(const std::vector<RawObservation>& obs) {
    if (obs.empty()) throw ValidationError("cannot derive a time axis from zero observations");
    std::int64_t lo = obs[0].timestamp, hi = obs[0].timestamp;
    for (const auto& o : obs) {
        lo = std::min(lo, o.timestamp);
        hi = std::max(hi, o.timestamp);
    }
    std::int64_t start = (lo / kStepSeconds) * kStepSeconds;
    if (start > lo) start -= kStepSeconds; // negative timestamps
    std::int64_t end = ((hi + kStepSeconds - 1) / kStepSeconds) * kStepSeconds;
    return TimeAxis(start, (end - start) / kStepSeconds + 1);
}

SeriesSet regularize(const std::vector<RawObservation>& obs, const TimeAxis& axis) {
    SeriesSet out(axis);
    for (const auto& [id, idx] : group_by_link(obs)) {
        if (idx.empty()) continue;
        SpeedSeries s;
        s.link_id = id;
        s.values = Eigen::VectorXd::Zero(axis.count());
        s.mask.assign(static_cast<std::size_t>(axis.count()), 0);

        std::size_t left = 0; // last observation with timestamp <= grid point
        for (std::int64_t t = 0; t < axis.count(); ++t) {
            std::int64_t ts = axis.timestamp(t);
            while (left + 1 < idx.size() && obs[idx[left + 1]].timestamp <= ts) ++left;
            const RawObservation& prev = obs[idx[left]];
            const RawObservation* next = left + 1 < idx.size() ? &obs[idx[left + 1]] : nullptr;

            if (prev.timestamp == ts) {
                s.values[t] = prev.speed_kmh;
                s.mask[static_cast<std::size_t>(t)] = 1;
                continue;
            }
            if (prev.timestamp > ts) continue; // before the first observation
            if (next == nullptr) continue;     // after the last observation
            bool prev_near = ts - prev.timestamp <= kInterpWindowSeconds;
            bool next_near = next->timestamp - ts <= kInterpWindowSeconds;
            if (!prev_near || !next_near) continue; // never bridge long outages
            double span = static_cast<double>(next->timestamp - prev.timestamp);
            double w = static_cast<double>(ts - prev.timestamp) / span;
            s.values[t] = prev.speed_kmh + w * (next->speed_kmh - prev.speed_kmh);
            s.mask[static_cast<std::size_t>(t)] = 1;
        }
        if (std::all_of(s.mask.begin(), s.mask.end(), [](std::uint8_t m) { return m == 0; }))
            std::cerr << "warning: link " << id << " has no usable observation on the grid\n";
        out.insert(std::move(s));
    }
    return out;
}

SeriesSet fill_missing(const SeriesSet& set) {
    SeriesSet out(set.axis());
    for (const auto& [id, s] : set.all()) {
        const std::int64_t n = s.size();
        std::int64_t first = -1, last = -1;
        for (std::int64_t t = 0; t < n; ++t) {
            if (s.mask[static_cast<std::size_t>(t)]) {
                if (first < 0) first = t;
                last = t;
            }
        }
        if (first < 0)
            throw ValidationError("link " + std::to_string(id) +
                                  " is entirely missing; cannot fill");
        SpeedSeries filled = s;
        // leading/trailing runs: nearest-value extension
        for (std::int64_t t = 0; t < first; ++t) filled.values[t] = s.values[first];
        for (std::int64_t t = last + 1; t < n; ++t) filled.values[t] = s.values[last];
        // interior runs: linear interpolation between enclosing observations
        std::int64_t prev = first;
        for (std::int64_t t = first + 1; t <= last; ++t) {
            if (!s.mask[static_cast<std::size_t>(t)]) continue;
            if (t > prev + 1) {
                double lo = s.values[prev], hi = s.values[t];
                double span = static_cast<double>(t - prev);
                for (std::int64_t u = prev + 1; u < t; ++u)
                    filled.values[u] = lo + (hi - lo) * static_cast<double>(u - prev) / span;
            }
            prev = t;
        }
        out.insert(std::move(filled));
    }
    return out;
}

CoverageResult filter_coverage(const SeriesSet& set, double threshold) {
    CoverageResult res;
    res.surviving = SeriesSet(set.axis());
    for (const auto& [id, s] : set.all()) {
        double frac = s.missing_fraction();
        if (frac >= threshold) {
            res.dropped.push_back({id, frac});
        } else {
            res.surviving.insert(s);
        }
    }
    return res;
}

SeriesSet preprocess(const std::vector<RawObservation>& obs, const RoadGraph& graph,
                     PipelineReport* report, int default_min_run, double coverage_threshold) {
    std::vector<RawObservation> cleaned = remove_default_speeds(obs, graph, default_min_run);
    TimeAxis axis = axis_from_observations(cleaned);
    SeriesSet regular = regularize(cleaned, axis);
    CoverageResult cov = filter_coverage(regular, coverage_threshold);
    SeriesSet filled = fill_missing(cov.surviving);
    filled.validate();
    if (report) {
        report->observations_in = static_cast<std::int64_t>(obs.size());
        report->default_speed_removed = static_cast<std::int64_t>(obs.size() - cleaned.size());
        report->dropped_links = cov.dropped;
    }
    return filled;
}

Eigen::VectorXd autocorrelation(const Eigen::VectorXd& values, std::int64_t max_lag) {
    const std::int64_t n = values.size();
    if (max_lag < 0 || max_lag >= n)
        throw ValidationError("autocorrelation: max_lag must be in [0, length)");
    const double mean = values.mean();
    Eigen::VectorXd centered = values.array() - mean;
    const double denom = centered.squaredNorm();
    if (denom <= 0.0) throw ValidationError("autocorrelation: series has zero variance");
    Eigen::VectorXd acf(max_lag + 1);
    for (std::int64_t k = 0; k <= max_lag; ++k)
        acf[k] = centered.head(n - k).dot(centered.tail(n - k)) / denom;
    return acf;
}

} // namespace trafficast
