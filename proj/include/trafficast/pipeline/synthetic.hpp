#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trafficast/core/series.hpp"
#include "trafficast/pipeline/observations.hpp"

namespace trafficast {

enum class GraphKind { Grid, Ring, RandomPlanar };

GraphKind graph_kind_from_string(const std::string& s);
std::string to_string(GraphKind k);

/// Parameters of the synthetic road-traffic generator.
struct SynthSpec {
    int n_links = 60;
    GraphKind graph_kind = GraphKind::Grid;
    int n_weeks = 14;
    std::int64_t start_epoch = 1532217600; // 2018-07-22T00:00:00Z, a Sunday

    // weekly-periodic profile
    double daily_amplitude_kmh = 22.0; // depth of the rush-hour dips
    double weekly_amplitude = 0.55;    // weekend relief factor in [0,1]

    // spatially propagating congestion waves
    double wave_rate_per_link_day = 0.0; // expected wave origins per link per day
    double wave_propagation_kmh = 1.5;   // upstream front speed
    double wave_amplitude_kmh = 25.0;
    int wave_duration_steps_min = 8;
    int wave_duration_steps_max = 16;
    double wave_hop_decay = 0.9;

    double noise_std_kmh = 0.0;
    double missing_rate = 0.0;
    double default_rate = 0.0; // fraction of points replaced by free-flow placeholders

    // graph geometry
    double length_m_min = 500.0;
    double length_m_max = 1000.0;
    double free_flow_min_kmh = 60.0;
    double free_flow_max_kmh = 110.0;

    std::uint64_t seed = 7;

    void validate() const;
};

/// Per-point provenance of the generated data.
struct GroundTruth {
    TimeAxis axis;
    std::vector<LinkId> link_ids;
    Eigen::MatrixXd clean; // n_links x steps, noiseless signal
    std::vector<std::vector<std::uint8_t>> default_injected;
    std::vector<std::vector<std::uint8_t>> missing_injected;
};

struct SynthResult {
    RoadGraph graph;
    std::vector<RawObservation> observations;
    GroundTruth truth;
};

/// Deterministic synthetic dataset: free-flow baseline minus rush-hour dips,
/// weekend relief, upstream-propagating congestion waves, Gaussian noise, and
/// injected missing/default placeholders.
SynthResult generate_synthetic(const SynthSpec& spec);

struct WaveEvent {
    LinkId origin;
    double t0_step;       // onset at the origin link, fractional steps allowed
    double duration_steps;
    double amplitude_kmh;
};

/// Subtract one congestion wave from the clean-value matrix. The wave starts
/// at the origin link and travels upstream; a link at cumulative upstream
/// distance d meters is hit after d/1000/propagation_kmh hours, with amplitude
/// decayed by hop_decay per hop. The dip is a raised-cosine bump peaking at
/// arrival + duration/2.
void apply_congestion_wave(Eigen::MatrixXd& clean, const RoadGraph& graph,
                           const std::vector<LinkId>& row_ids, const WaveEvent& event,
                           double propagation_kmh, double hop_decay, int max_hops = 12);

/// Ground-truth CSV: link_id,time_index,clean_speed,was_default_injected,was_missing_injected.
void write_ground_truth_csv(const GroundTruth& truth, const std::string& path);
GroundTruth read_ground_truth_csv(const std::string& path, const TimeAxis& axis);

} // namespace trafficast
