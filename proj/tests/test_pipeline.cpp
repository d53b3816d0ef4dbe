#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "trafficast/pipeline/observations.hpp"
#include "trafficast/pipeline/preprocess.hpp"
#include "trafficast/pipeline/synthetic.hpp"
#include "trafficast/util/csvio.hpp"

using namespace trafficast;

namespace {

constexpr std::int64_t kSunday = 1532217600;

RoadGraph chain_graph(int n, double free_flow = 80.0) {
    std::vector<LinkRecord> links;
    for (int i = 0; i < n; ++i)
        links.push_back({i + 1, i, i + 1, 600.0, free_flow});
    return RoadGraph(links);
}

} // namespace

TEST_CASE("ingest_csv parses well-formed rows and counts bad ones") {
    std::string path = "test_ingest.csv";
    write_text_file(path,
                    "segment_id,timestamp_utc,speed_kmh\n"
                    "1,2018-07-22T00:00:00Z,55.5\n"
                    "1,2018-07-22T00:15:00Z,54.0\n"
                    "2,2018-07-22T00:00:00Z,61.25\n");
    IngestResult r = ingest_csv(path);
    REQUIRE(r.observations.size() == 3);
    CHECK(r.malformed_rows == 0);
    CHECK(r.observations[0].link_id == 1);
    CHECK(r.observations[0].timestamp == kSunday);
    CHECK(r.observations[2].speed_kmh == 61.25);
    std::remove(path.c_str());
}

TEST_CASE("ingest_csv rejects negative speeds per row and fails above 1%") {
    std::string path = "test_ingest_bad.csv";
    std::string body = "segment_id,timestamp_utc,speed_kmh\n";
    body += "1,2018-07-22T00:00:00Z,-5.0\n"; // negative -> malformed
    for (int i = 0; i < 200; ++i)
        body += "1,2018-07-22T01:00:00Z,50.0\n";
    write_text_file(path, body);
    IngestResult r = ingest_csv(path);
    CHECK(r.malformed_rows == 1);
    CHECK(r.observations.size() == 200);

    // >1% malformed fails the whole file
    write_text_file(path,
                    "segment_id,timestamp_utc,speed_kmh\n"
                    "1,2018-07-22T00:00:00Z,-5.0\n"
                    "1,2018-07-22T00:15:00Z,50.0\n");
    CHECK_THROWS_AS(ingest_csv(path), ValidationError);
    std::remove(path.c_str());
}

TEST_CASE("ingest_csv on an empty body returns nothing") {
    std::string path = "test_ingest_empty.csv";
    write_text_file(path, "segment_id,timestamp_utc,speed_kmh\n");
    IngestResult r = ingest_csv(path);
    CHECK(r.observations.empty());
    std::remove(path.c_str());
}

TEST_CASE("remove_default_speeds drops long runs and keeps singletons") {
    RoadGraph g = chain_graph(2, 80.0);
    std::vector<RawObservation> obs;
    // link 1: run of 6 exact free-flow values
    for (int i = 0; i < 6; ++i) obs.push_back({1, kSunday + i * 900, 80.0});
    obs.push_back({1, kSunday + 6 * 900, 55.0});
    // link 2: isolated free-flow value between normal readings
    obs.push_back({2, kSunday, 60.0});
    obs.push_back({2, kSunday + 900, 80.0});
    obs.push_back({2, kSunday + 1800, 61.0});

    auto out = remove_default_speeds(obs, g);
    REQUIRE(out.size() == 4);
    for (const auto& o : out)
        CHECK((o.link_id == 2 || o.speed_kmh == 55.0));

    // unknown link id fails loudly
    obs.push_back({99, kSunday, 10.0});
    CHECK_THROWS_AS(remove_default_speeds(obs, g), ValidationError);
}

TEST_CASE("remove_default_speeds boundary: run of exactly 4 goes, run of 3 stays") {
    RoadGraph g = chain_graph(1, 70.0);
    std::vector<RawObservation> obs;
    for (int i = 0; i < 3; ++i) obs.push_back({1, kSunday + i * 900, 70.0});
    obs.push_back({1, kSunday + 3 * 900, 30.0});
    for (int i = 4; i < 8; ++i) obs.push_back({1, kSunday + i * 900, 70.0});
    auto out = remove_default_speeds(obs, g);
    CHECK(out.size() == 4); // 3 + the 30.0; the run of 4 is gone
}

TEST_CASE("regularize interpolates between near observations") {
    // raw points at 00:07 and 00:22 -> 00:15 gets 20 + (30-20)*8/15 = 25.333...
    TimeAxis axis(kSunday, 3);
    std::vector<RawObservation> obs = {
        {1, kSunday + 7 * 60, 20.0},
        {1, kSunday + 22 * 60, 30.0},
    };
    SeriesSet set = regularize(obs, axis);
    const SpeedSeries& s = set.at(1);
    CHECK(s.mask[1] == 1);
    CHECK(s.values[1] == doctest::Approx(20.0 + 10.0 * 8.0 / 15.0).epsilon(1e-12));
    CHECK(s.mask[0] == 0); // before the first observation
    CHECK(s.mask[2] == 0); // after the last
}

TEST_CASE("regularize copies on-grid values exactly and is the identity on regular data") {
    TimeAxis axis(kSunday, 8);
    std::vector<RawObservation> obs;
    for (int t = 0; t < 8; ++t)
        obs.push_back({1, axis.timestamp(t), 40.0 + 0.671 * t});
    SeriesSet set = regularize(obs, axis);
    const SpeedSeries& s = set.at(1);
    for (int t = 0; t < 8; ++t) {
        CHECK(s.mask[static_cast<std::size_t>(t)] == 1);
        CHECK(s.values[t] == 40.0 + 0.671 * t); // bit-exact copy
    }
}

TEST_CASE("regularize masks the interior of long gaps") {
    TimeAxis axis(kSunday, 12);
    std::vector<RawObservation> obs = {
        {1, axis.timestamp(0), 50.0},
        {1, axis.timestamp(9), 60.0}, // 2h15m gap
    };
    SeriesSet set = regularize(obs, axis);
    const SpeedSeries& s = set.at(1);
    CHECK(s.mask[0] == 1);
    CHECK(s.mask[9] == 1);
    for (int t = 1; t <= 8; ++t) CHECK(s.mask[static_cast<std::size_t>(t)] == 0);
}

TEST_CASE("fill_missing interpolates interior runs and extends edges") {
    TimeAxis axis(kSunday, 3);
    SeriesSet set(axis);
    SpeedSeries s;
    s.link_id = 1;
    s.values.resize(3);
    s.values << 10.0, 0.0, 20.0;
    s.mask = {1, 0, 1};
    set.insert(s);
    SeriesSet filled = fill_missing(set);
    CHECK(filled.at(1).values[1] == doctest::Approx(15.0));
    CHECK(filled.at(1).mask[1] == 0); // imputed points stay masked

    TimeAxis axis4(kSunday, 4);
    SeriesSet edge(axis4);
    SpeedSeries e;
    e.link_id = 2;
    e.values.resize(4);
    e.values << 0.0, 0.0, 8.0, 9.0;
    e.mask = {0, 0, 1, 1};
    edge.insert(e);
    SeriesSet efilled = fill_missing(edge);
    CHECK(efilled.at(2).values[0] == 8.0);
    CHECK(efilled.at(2).values[1] == 8.0);
    CHECK(efilled.at(2).values[2] == 8.0);
    CHECK(efilled.at(2).values[3] == 9.0);
}

TEST_CASE("fill_missing is idempotent and the identity on full series") {
    TimeAxis axis(kSunday, 16);
    SeriesSet set(axis);
    SpeedSeries s;
    s.link_id = 1;
    s.values.resize(16);
    for (int t = 0; t < 16; ++t) s.values[t] = 30.0 + std::sin(0.3 * t);
    s.mask.assign(16, 1);
    s.mask[4] = s.mask[5] = s.mask[15] = 0;
    set.insert(s);

    SeriesSet once = fill_missing(set);
    SeriesSet twice = fill_missing(once);
    CHECK(once.at(1).values.isApprox(twice.at(1).values, 0.0));

    SpeedSeries full = s;
    full.mask.assign(16, 1);
    SeriesSet fullset(axis);
    fullset.insert(full);
    CHECK(fill_missing(fullset).at(1).values.isApprox(full.values, 0.0));

    SpeedSeries empty = s;
    empty.mask.assign(16, 0);
    SeriesSet emptyset(axis);
    emptyset.insert(empty);
    CHECK_THROWS_AS(fill_missing(emptyset), ValidationError);
}

TEST_CASE("filter_coverage drops at the 20% threshold") {
    TimeAxis axis(kSunday, 1000);
    SeriesSet set(axis);
    auto make = [&](LinkId id, int missing) {
        SpeedSeries s;
        s.link_id = id;
        s.values = Eigen::VectorXd::Constant(1000, 45.0);
        s.mask.assign(1000, 1);
        for (int i = 0; i < missing; ++i) s.mask[static_cast<std::size_t>(i)] = 0;
        set.insert(s);
    };
    make(1, 250); // 25% -> dropped
    make(2, 199); // 19.9% -> kept
    make(3, 200); // exactly 20% -> dropped (>= threshold)
    CoverageResult r = filter_coverage(set, 0.20);
    CHECK(r.surviving.size() == 1);
    CHECK(r.surviving.has(2));
    REQUIRE(r.dropped.size() == 2);
    CHECK(r.dropped[0].link_id == 1);
    CHECK(r.dropped[0].missing_fraction == doctest::Approx(0.25));
}

TEST_CASE("synthetic generator: noiseless waveless data is exactly weekly periodic") {
    SynthSpec spec;
    spec.n_links = 6;
    spec.graph_kind = GraphKind::Ring;
    spec.n_weeks = 3;
    spec.noise_std_kmh = 0.0;
    spec.wave_rate_per_link_day = 0.0;
    spec.missing_rate = 0.0;
    spec.default_rate = 0.0;
    SynthResult r = generate_synthetic(spec);
    CHECK(r.graph.size() == 6);
    CHECK(r.truth.clean.cols() == 3 * kStepsPerWeek);

    for (Eigen::Index i = 0; i < r.truth.clean.rows(); ++i)
        for (std::int64_t t = 0; t + kStepsPerWeek < 3 * kStepsPerWeek; ++t)
            CHECK(r.truth.clean(i, t) == r.truth.clean(i, t + kStepsPerWeek));

    // observations carry the clean values exactly when nothing is injected
    CHECK(r.observations.size() == static_cast<std::size_t>(6 * 3 * kStepsPerWeek));
}

TEST_CASE("synthetic generator is deterministic given the seed") {
    SynthSpec spec;
    spec.n_links = 8;
    spec.n_weeks = 3;
    spec.noise_std_kmh = 2.0;
    spec.missing_rate = 0.05;
    spec.default_rate = 0.03;
    spec.wave_rate_per_link_day = 0.5;
    spec.seed = 42;
    SynthResult a = generate_synthetic(spec);
    SynthResult b = generate_synthetic(spec);
    REQUIRE(a.observations.size() == b.observations.size());
    for (std::size_t i = 0; i < a.observations.size(); ++i) {
        CHECK(a.observations[i].link_id == b.observations[i].link_id);
        CHECK(a.observations[i].timestamp == b.observations[i].timestamp);
        CHECK(a.observations[i].speed_kmh == b.observations[i].speed_kmh);
    }
    CHECK(a.truth.clean.isApprox(b.truth.clean, 0.0));
}

TEST_CASE("congestion wave arrives upstream with the configured delay") {
    // chain 1 -> 2 -> 3 -> 4 -> 5 (link i from node i-1 to node i); a wave on
    // link 5 must hit link 4, then 3, each after length/propagation time
    std::vector<LinkRecord> links;
    for (int i = 1; i <= 5; ++i) links.push_back({i, i - 1, i, 750.0, 80.0});
    RoadGraph g(links);
    std::vector<LinkId> ids = {1, 2, 3, 4, 5};
    Eigen::MatrixXd clean = Eigen::MatrixXd::Constant(5, 200, 80.0);

    WaveEvent ev{5, 50.0, 12.0, 20.0};
    double prop_kmh = 1.5; // 750 m at 1.5 km/h = 0.5 h = 2 steps per hop
    apply_congestion_wave(clean, g, ids, ev, prop_kmh, 1.0);

    auto dip_center = [&](int row) {
        Eigen::Index at;
        clean.row(row).minCoeff(&at);
        return static_cast<double>(at);
    };
    // bump peaks at arrival + duration/2
    CHECK(dip_center(4) == doctest::Approx(50.0 + 6.0).epsilon(0.02));
    CHECK(dip_center(3) == doctest::Approx(52.0 + 6.0).epsilon(0.02));
    CHECK(dip_center(2) == doctest::Approx(54.0 + 6.0).epsilon(0.02));
    // downstream of the origin stays untouched: no link downstream exists
    // upstream-only propagation means link 5's own dip is the earliest
    CHECK(dip_center(4) < dip_center(2));
}

TEST_CASE("default injection is recovered by remove_default_speeds") {
    SynthSpec spec;
    spec.n_links = 10;
    spec.n_weeks = 3;
    spec.noise_std_kmh = 1.0;
    spec.default_rate = 0.05;
    spec.missing_rate = 0.04;
    spec.seed = 3;
    SynthResult r = generate_synthetic(spec);

    auto survivors = remove_default_speeds(r.observations, r.graph);

    // index the survivors
    std::set<std::pair<LinkId, std::int64_t>> kept;
    for (const auto& o : survivors) kept.insert({o.link_id, o.timestamp});

    std::int64_t injected_present = 0, injected_removed = 0, false_removals = 0;
    std::map<LinkId, Eigen::Index> row_of;
    for (std::size_t i = 0; i < r.truth.link_ids.size(); ++i)
        row_of[r.truth.link_ids[i]] = static_cast<Eigen::Index>(i);
    for (const auto& o : r.observations) {
        std::int64_t t = r.truth.axis.index_of(o.timestamp);
        std::size_t row = static_cast<std::size_t>(row_of[o.link_id]);
        bool is_default = r.truth.default_injected[row][static_cast<std::size_t>(t)];
        bool removed = kept.count({o.link_id, o.timestamp}) == 0;
        if (is_default) {
            ++injected_present;
            if (removed) ++injected_removed;
        } else if (removed) {
            ++false_removals;
        }
    }
    REQUIRE(injected_present > 100);
    CHECK(static_cast<double>(injected_removed) >= 0.95 * static_cast<double>(injected_present));
    CHECK(false_removals == 0);
}

TEST_CASE("full pipeline keeps order and satisfies the coverage invariant") {
    SynthSpec spec;
    spec.n_links = 8;
    spec.n_weeks = 3;
    spec.noise_std_kmh = 1.5;
    spec.default_rate = 0.04;
    spec.missing_rate = 0.08;
    spec.seed = 11;
    SynthResult r = generate_synthetic(spec);

    PipelineReport rep;
    SeriesSet set = preprocess(r.observations, r.graph, &rep);
    CHECK(rep.default_speed_removed > 0);
    CHECK(set.size() + rep.dropped_links.size() == 8);
    for (const auto& [id, s] : set.all()) {
        CHECK(s.missing_fraction() < 0.20);
        // filled series has finite values everywhere
        for (Eigen::Index t = 0; t < s.values.size(); ++t) CHECK(std::isfinite(s.values[t]));
    }
}

TEST_CASE("autocorrelation of a long cosine and of noise") {
    const int n = 10080;
    Eigen::VectorXd cosine(n);
    for (int t = 0; t < n; ++t) cosine[t] = std::cos(2.0 * M_PI * t / 96.0);
    Eigen::VectorXd acf = autocorrelation(cosine, 100);
    CHECK(acf[0] == doctest::Approx(1.0));
    CHECK(acf[96] == doctest::Approx(1.0).epsilon(0.01));
    CHECK(acf[48] == doctest::Approx(-1.0).epsilon(0.01));

    Rng rng(5);
    Eigen::VectorXd noise(10000);
    for (int t = 0; t < 10000; ++t) noise[t] = rng.normal();
    Eigen::VectorXd nacf = autocorrelation(noise, 50);
    for (int k = 1; k <= 50; ++k) CHECK(std::abs(nacf[k]) < 0.05);

    Eigen::VectorXd constant = Eigen::VectorXd::Constant(100, 3.0);
    CHECK_THROWS_AS(autocorrelation(constant, 10), ValidationError);
}

TEST_CASE("autocorrelation of synthetic traffic shows the daily period") {
    SynthSpec spec;
    spec.n_links = 4;
    spec.graph_kind = GraphKind::Ring;
    spec.n_weeks = 3;
    spec.noise_std_kmh = 1.0;
    spec.seed = 9;
    SynthResult r = generate_synthetic(spec);
    PipelineReport rep;
    SeriesSet set = preprocess(r.observations, r.graph, &rep);
    REQUIRE(set.size() > 0);
    LinkId id = set.link_ids()[0];
    Eigen::VectorXd acf = autocorrelation(set.at(id).values, 96);
    CHECK(acf[96] > 0.5);
}

TEST_CASE("observations csv round trip") {
    std::vector<RawObservation> obs = {
        {1, kSunday, 55.123456789012345},
        {2, kSunday + 947, 61.0},
    };
    std::string path = "test_obs_roundtrip.csv";
    write_observations_csv(obs, path);
    IngestResult r = ingest_csv(path);
    REQUIRE(r.observations.size() == 2);
    CHECK(r.observations[0].speed_kmh == obs[0].speed_kmh);
    CHECK(r.observations[1].timestamp == obs[1].timestamp);
    std::remove(path.c_str());
}
