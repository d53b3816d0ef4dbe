#include "trafficast/pipeline/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <sstream>

#include "trafficast/util/csvio.hpp"
#include "trafficast/util/rng.hpp"

namespace trafficast {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct Point {
    double x, y;
};

bool segments_cross(Point a, Point b, Point c, Point d) {
    auto orient = [](Point p, Point q, Point r) {
        double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
        return v > 0 ? 1 : (v < 0 ? -1 : 0);
    };
    if (a.x == c.x && a.y == c.y) return false; // shared endpoints do not cross
    if (a.x == d.x && a.y == d.y) return false;
    if (b.x == c.x && b.y == c.y) return false;
    if (b.x == d.x && b.y == d.y) return false;
    return orient(a, b, c) != orient(a, b, d) && orient(c, d, a) != orient(c, d, b);
}

std::vector<LinkRecord> build_graph_links(const SynthSpec& spec, Rng& rng) {
    std::vector<LinkRecord> links;
    auto add_link = [&](NodeId from, NodeId to) {
        if (static_cast<int>(links.size()) >= spec.n_links) return;
        LinkRecord l;
        l.link_id = static_cast<LinkId>(links.size() + 1);
        l.from_node = from;
        l.to_node = to;
        l.length_m = rng.uniform(spec.length_m_min, spec.length_m_max);
        l.free_flow_kmh = rng.uniform(spec.free_flow_min_kmh, spec.free_flow_max_kmh);
        links.push_back(l);
    };

    switch (spec.graph_kind) {
        case GraphKind::Ring: {
            // one directed cycle: exactly n_links nodes and links
            for (int i = 0; i < spec.n_links; ++i) add_link(i, (i + 1) % spec.n_links);
            break;
        }
        case GraphKind::Grid: {
            // both directions of each lattice edge, row-major enumeration
            int cols = std::max(2, static_cast<int>(std::ceil(std::sqrt(spec.n_links / 4.0))) + 1);
            int rows = cols;
            while (2 * ((rows - 1) * cols + rows * (cols - 1)) < spec.n_links) ++rows;
            auto node = [&](int r, int c) { return static_cast<NodeId>(r * cols + c); };
            for (int r = 0; r < rows && static_cast<int>(links.size()) < spec.n_links; ++r) {
                for (int c = 0; c < cols && static_cast<int>(links.size()) < spec.n_links; ++c) {
                    if (c + 1 < cols) {
                        add_link(node(r, c), node(r, c + 1));
                        add_link(node(r, c + 1), node(r, c));
                    }
                    if (r + 1 < rows) {
                        add_link(node(r, c), node(r + 1, c));
                        add_link(node(r + 1, c), node(r, c));
                    }
                }
            }
            break;
        }
        case GraphKind::RandomPlanar: {
            int n_nodes = spec.n_links / 2 + 2;
            std::vector<Point> pts(static_cast<std::size_t>(n_nodes));
            for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
            struct Cand {
                double d2;
                int a, b;
            };
            std::vector<Cand> cands;
            for (int a = 0; a < n_nodes; ++a)
                for (int b = a + 1; b < n_nodes; ++b) {
                    double dx = pts[a].x - pts[b].x, dy = pts[a].y - pts[b].y;
                    cands.push_back({dx * dx + dy * dy, a, b});
                }
            std::sort(cands.begin(), cands.end(), [](const Cand& l, const Cand& r) {
                if (l.d2 != r.d2) return l.d2 < r.d2;
                return std::make_pair(l.a, l.b) < std::make_pair(r.a, r.b);
            });
            std::vector<std::pair<int, int>> accepted;
            for (const auto& c : cands) {
                if (static_cast<int>(links.size()) >= spec.n_links) break;
                bool crosses = false;
                for (const auto& e : accepted) {
                    if (segments_cross(pts[c.a], pts[c.b], pts[e.first], pts[e.second])) {
                        crosses = true;
                        break;
                    }
                }
                if (crosses) continue;
                accepted.push_back({c.a, c.b});
                add_link(c.a, c.b);
                add_link(c.b, c.a);
            }
            break;
        }
    }
    if (static_cast<int>(links.size()) != spec.n_links)
        throw ValidationError("synthetic graph construction produced " +
                              std::to_string(links.size()) + " links, wanted " +
                              std::to_string(spec.n_links));
    return links;
}

double rush_hour_profile(int slot, int dow, double amplitude, double weekend_relief) {
    // two Gaussian dips: 08:00 (slot 32) and 17:30 (slot 70)
    double morning = std::exp(-0.5 * std::pow((slot - 32.0) / 6.0, 2.0));
    double evening = std::exp(-0.5 * std::pow((slot - 70.0) / 9.0, 2.0));
    bool weekend = dow == 0 || dow == 6;
    double day_factor = weekend ? 1.0 - weekend_relief : 1.0;
    return amplitude * day_factor * (morning + 0.85 * evening);
}

} // namespace

GraphKind graph_kind_from_string(const std::string& s) {
    if (s == "grid") return GraphKind::Grid;
    if (s == "ring") return GraphKind::Ring;
    if (s == "random-planar") return GraphKind::RandomPlanar;
    throw ValidationError("unknown graph kind '" + s + "' (grid|ring|random-planar)");
}

std::string to_string(GraphKind k) {
    switch (k) {
        case GraphKind::Grid: return "grid";
        case GraphKind::Ring: return "ring";
        case GraphKind::RandomPlanar: return "random-planar";
    }
    return "?";
}

void SynthSpec::validate() const {
    if (n_links < 1) throw ValidationError("synth: n_links must be >= 1");
    if (n_weeks < 3) throw ValidationError("synth: n_weeks must be >= 3");
    if (start_epoch % kStepSeconds != 0)
        throw ValidationError("synth: start must sit on the 15-minute grid");
    for (double r : {missing_rate, default_rate, weekly_amplitude, wave_hop_decay}) {
        if (r < 0.0 || r > 1.0) throw ValidationError("synth: rates must be in [0,1]");
    }
    if (noise_std_kmh < 0.0 || daily_amplitude_kmh < 0.0 || wave_amplitude_kmh < 0.0 ||
        wave_rate_per_link_day < 0.0)
        throw ValidationError("synth: amplitudes and rates must be non-negative");
    if (wave_propagation_kmh <= 0.0) throw ValidationError("synth: propagation speed must be > 0");
    if (wave_duration_steps_min < 1 || wave_duration_steps_max < wave_duration_steps_min)
        throw ValidationError("synth: bad wave duration range");
    if (length_m_min <= 0.0 || length_m_max < length_m_min)
        throw ValidationError("synth: bad length range");
    if (free_flow_min_kmh <= 0.0 || free_flow_max_kmh < free_flow_min_kmh)
        throw ValidationError("synth: bad free-flow range");
}

void apply_congestion_wave(Eigen::MatrixXd& clean, const RoadGraph& graph,
                           const std::vector<LinkId>& row_ids, const WaveEvent& event,
                           double propagation_kmh, double hop_decay, int max_hops) {
    std::map<LinkId, Eigen::Index> row_of;
    for (std::size_t i = 0; i < row_ids.size(); ++i)
        row_of[row_ids[i]] = static_cast<Eigen::Index>(i);

    // best-first upstream expansion by cumulative distance
    struct Entry {
        double dist_m;
        int hops;
        LinkId link;
    };
    auto cmp = [](const Entry& a, const Entry& b) {
        if (a.dist_m != b.dist_m) return a.dist_m > b.dist_m;
        return a.link > b.link;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> frontier(cmp);
    std::map<LinkId, double> settled;
    frontier.push({0.0, 0, event.origin});

    const double steps_per_meter = 4.0 / (1000.0 * propagation_kmh); // 4 steps per hour
    const Eigen::Index T = clean.cols();

    while (!frontier.empty()) {
        Entry e = frontier.top();
        frontier.pop();
        if (settled.count(e.link)) continue;
        settled[e.link] = e.dist_m;

        double amp = event.amplitude_kmh * std::pow(hop_decay, e.hops);
        if (amp < 0.25) continue;
        double arrival = event.t0_step + e.dist_m * steps_per_meter;
        auto row_it = row_of.find(e.link);
        if (row_it != row_of.end()) {
            Eigen::Index lo = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::ceil(arrival)));
            Eigen::Index hi = std::min<Eigen::Index>(
                T - 1, static_cast<Eigen::Index>(std::floor(arrival + event.duration_steps)));
            for (Eigen::Index t = lo; t <= hi; ++t) {
                double progress = (static_cast<double>(t) - arrival) / event.duration_steps;
                clean(row_it->second, t) -= amp * 0.5 * (1.0 - std::cos(2.0 * kPi * progress));
            }
        }
        if (e.hops >= max_hops) continue;
        const LinkRecord& rec = graph.link(e.link);
        for (LinkId up : graph.links_into(rec.from_node)) {
            if (settled.count(up)) continue;
            frontier.push({e.dist_m + graph.link(up).length_m, e.hops + 1, up});
        }
    }
}

SynthResult generate_synthetic(const SynthSpec& spec) {
    spec.validate();

    Rng graph_rng(Rng::derive(spec.seed, 1));
    RoadGraph graph(build_graph_links(spec, graph_rng));

    const std::int64_t steps = static_cast<std::int64_t>(spec.n_weeks) * kStepsPerWeek;
    TimeAxis axis(spec.start_epoch, steps);

    std::vector<LinkId> ids;
    ids.reserve(graph.size());
    for (const auto& l : graph.links()) ids.push_back(l.link_id);

    const Eigen::Index N = static_cast<Eigen::Index>(ids.size());
    Eigen::MatrixXd clean(N, steps);

    // weekly-periodic deterministic profile
    for (Eigen::Index i = 0; i < N; ++i) {
        const LinkRecord& rec = graph.link(ids[static_cast<std::size_t>(i)]);
        Rng lrng(Rng::derive(spec.seed, 100 + static_cast<std::uint64_t>(rec.link_id)));
        double link_factor = lrng.uniform(0.6, 1.0);
        double week_profile[kStepsPerWeek];
        for (int ws = 0; ws < kStepsPerWeek; ++ws) {
            int dow = ws / static_cast<int>(kStepsPerDay);
            int slot = ws % static_cast<int>(kStepsPerDay);
            week_profile[ws] = rec.free_flow_kmh - rush_hour_profile(slot, dow,
                                                                     spec.daily_amplitude_kmh *
                                                                         link_factor,
                                                                     spec.weekly_amplitude);
        }
        for (std::int64_t t = 0; t < steps; ++t)
            clean(i, t) = week_profile[week_slot(t, axis)];
    }

    // congestion waves, propagating upstream
    if (spec.wave_rate_per_link_day > 0.0) {
        Rng wrng(Rng::derive(spec.seed, 2));
        double n_days = static_cast<double>(spec.n_weeks) * 7.0;
        std::int64_t n_events = static_cast<std::int64_t>(
            std::llround(spec.wave_rate_per_link_day * static_cast<double>(spec.n_links) * n_days));
        for (std::int64_t e = 0; e < n_events; ++e) {
            WaveEvent ev;
            ev.origin = ids[static_cast<std::size_t>(wrng.uniform_index(ids.size()))];
            ev.t0_step = wrng.uniform(0.0, static_cast<double>(steps));
            ev.duration_steps = wrng.uniform(static_cast<double>(spec.wave_duration_steps_min),
                                             static_cast<double>(spec.wave_duration_steps_max));
            ev.amplitude_kmh = spec.wave_amplitude_kmh * wrng.uniform(0.7, 1.3);
            apply_congestion_wave(clean, graph, ids, ev, spec.wave_propagation_kmh,
                                  spec.wave_hop_decay);
        }
    }

    clean = clean.cwiseMax(1.0).cwiseMin(249.0);

    GroundTruth truth;
    truth.axis = axis;
    truth.link_ids = ids;
    truth.clean = clean;
    truth.default_injected.assign(ids.size(),
                                  std::vector<std::uint8_t>(static_cast<std::size_t>(steps), 0));
    truth.missing_injected.assign(ids.size(),
                                  std::vector<std::uint8_t>(static_cast<std::size_t>(steps), 0));

    std::vector<RawObservation> observations;
    observations.reserve(static_cast<std::size_t>(N * steps));

    for (Eigen::Index i = 0; i < N; ++i) {
        LinkId id = ids[static_cast<std::size_t>(i)];
        const LinkRecord& rec = graph.link(id);
        Rng prng(Rng::derive(spec.seed, 200000 + static_cast<std::uint64_t>(id)));

        std::vector<double> observed(static_cast<std::size_t>(steps));
        for (std::int64_t t = 0; t < steps; ++t) {
            double v = clean(i, t);
            if (spec.noise_std_kmh > 0.0) v += prng.normal(0.0, spec.noise_std_kmh);
            observed[static_cast<std::size_t>(t)] = std::min(249.0, std::max(1.0, v));
        }

        // default-speed placeholders come in runs of 4..8 so the removal rule
        // can find them
        if (spec.default_rate > 0.0) {
            double run_start_p = spec.default_rate / 6.0;
            std::int64_t t = 0;
            while (t < steps) {
                if (prng.uniform() < run_start_p) {
                    std::int64_t run = 4 + static_cast<std::int64_t>(prng.uniform_index(5));
                    for (std::int64_t r = 0; r < run && t + r < steps; ++r) {
                        observed[static_cast<std::size_t>(t + r)] = rec.free_flow_kmh;
                        truth.default_injected[static_cast<std::size_t>(i)]
                                              [static_cast<std::size_t>(t + r)] = 1;
                    }
                    t += run;
                } else {
                    ++t;
                }
            }
        }

        // missing injections never hit default positions, so placeholder runs
        // stay intact in the observation sequence
        if (spec.missing_rate > 0.0) {
            for (std::int64_t t = 0; t < steps; ++t) {
                if (truth.default_injected[static_cast<std::size_t>(i)]
                                          [static_cast<std::size_t>(t)])
                    continue;
                if (prng.uniform() < spec.missing_rate)
                    truth.missing_injected[static_cast<std::size_t>(i)]
                                          [static_cast<std::size_t>(t)] = 1;
            }
        }

        for (std::int64_t t = 0; t < steps; ++t) {
            if (truth.missing_injected[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)])
                continue;
            observations.push_back({id, axis.timestamp(t), observed[static_cast<std::size_t>(t)]});
        }
    }

    return {std::move(graph), std::move(observations), std::move(truth)};
}

void write_ground_truth_csv(const GroundTruth& truth, const std::string& path) {
    std::ostringstream os;
    os << "link_id,time_index,clean_speed,was_default_injected,was_missing_injected\n";
    char buf[64];
    for (std::size_t i = 0; i < truth.link_ids.size(); ++i) {
        for (std::int64_t t = 0; t < truth.axis.count(); ++t) {
            std::snprintf(buf, sizeof(buf), "%.17g", truth.clean(static_cast<Eigen::Index>(i), t));
            os << truth.link_ids[i] << ',' << t << ',' << buf << ','
               << int(truth.default_injected[i][static_cast<std::size_t>(t)]) << ','
               << int(truth.missing_injected[i][static_cast<std::size_t>(t)]) << '\n';
        }
    }
    write_text_file(path, os.str());
}

GroundTruth read_ground_truth_csv(const std::string& path, const TimeAxis& axis) {
    std::vector<std::string> lines = read_lines(path);
    if (lines.empty() ||
        lines[0] != "link_id,time_index,clean_speed,was_default_injected,was_missing_injected")
        throw ValidationError("bad ground-truth csv: " + path);
    std::map<LinkId, std::vector<std::pair<std::int64_t, std::array<double, 3>>>> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = split_csv_line(lines[i]);
        if (f.size() != 5)
            throw ValidationError("ground-truth csv row " + std::to_string(i + 1) + " malformed");
        rows[std::stoll(f[0])].push_back(
            {std::stoll(f[1]), {std::stod(f[2]), std::stod(f[3]), std::stod(f[4])}});
    }
    GroundTruth truth;
    truth.axis = axis;
    for (auto& [id, v] : rows) truth.link_ids.push_back(id);
    truth.clean.resize(static_cast<Eigen::Index>(rows.size()), axis.count());
    truth.default_injected.assign(rows.size(),
                                  std::vector<std::uint8_t>(static_cast<std::size_t>(axis.count()), 0));
    truth.missing_injected.assign(rows.size(),
                                  std::vector<std::uint8_t>(static_cast<std::size_t>(axis.count()), 0));
    Eigen::Index r = 0;
    for (auto& [id, v] : rows) {
        for (auto& [t, vals] : v) {
            if (t < 0 || t >= axis.count())
                throw ValidationError("ground-truth csv: time index out of range");
            truth.clean(r, t) = vals[0];
            truth.default_injected[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)] =
                vals[1] != 0.0;
            truth.missing_injected[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)] =
                vals[2] != 0.0;
        }
        ++r;
    }
    return truth;
}

} // namespace trafficast
