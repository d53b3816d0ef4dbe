#include <doctest.h>

#include "trafficast/core/graph.hpp"
#include "trafficast/core/series.hpp"
#include "trafficast/core/time_axis.hpp"
#include "trafficast/util/timefmt.hpp"
#include "trafficast/util/toml.hpp"

using namespace trafficast;

namespace {
constexpr std::int64_t kSunday = 1532217600; // 2018-07-22T00:00:00Z
}

TEST_CASE("timestamps parse and format") {
    CHECK(parse_iso8601_utc("2018-07-22T00:00:00Z") == kSunday);
    CHECK(parse_iso8601_utc("2018-07-22T00:00Z") == kSunday);
    CHECK(format_iso8601_utc(kSunday) == "2018-07-22T00:00:00Z");
    CHECK(parse_iso8601_utc("2018-10-21T00:00:00Z") ==
          kSunday + 13 * 7 * 86400); // 13 weeks later
    CHECK_THROWS_AS(parse_iso8601_utc("2018-07-22 00:00:00"), ValidationError);
    CHECK_THROWS_AS(parse_iso8601_utc("not a time"), ValidationError);

    // round trip across a year of random-ish offsets
    for (std::int64_t off = 0; off < 365; off += 17) {
        std::int64_t ts = kSunday + off * 86400 + (off % 24) * 3600 + (off % 60) * 60;
        CHECK(parse_iso8601_utc(format_iso8601_utc(ts)) == ts);
    }
}

TEST_CASE("weekday_slot maps indices onto the Sunday-origin week") {
    TimeAxis axis(kSunday, 3 * kStepsPerWeek);

    auto ws = weekday_slot(0, axis);
    CHECK(ws.day_of_week == 0);
    CHECK(ws.slot_of_day == 0);

    ws = weekday_slot(96, axis); // one day = 96 slots
    CHECK(ws.day_of_week == 1);
    CHECK(ws.slot_of_day == 0);

    ws = weekday_slot(100, axis); // 100 - 96 = 4
    CHECK(ws.day_of_week == 1);
    CHECK(ws.slot_of_day == 4);

    CHECK_THROWS_AS(weekday_slot(-1, axis), ValidationError);
    CHECK_THROWS_AS(weekday_slot(axis.count(), axis), ValidationError);
}

TEST_CASE("time axis index/timestamp round trip") {
    TimeAxis axis(kSunday, 1000);
    for (std::int64_t t : {0L, 1L, 95L, 96L, 671L, 672L, 999L})
        CHECK(axis.index_of(axis.timestamp(t)) == t);
    CHECK_THROWS_AS(axis.index_of(kSunday + 450), ValidationError); // off grid
    CHECK_THROWS_AS(TimeAxis(kSunday + 1, 10), ValidationError);    // misaligned start
}

TEST_CASE("lag_indices shifts by one day and one week") {
    auto l = lag_indices(672);
    CHECK(l.t_minus_d == 576);
    CHECK(l.t_minus_w == 0);

    l = lag_indices(1000);
    CHECK(l.t_minus_d == 904);
    CHECK(l.t_minus_w == 328);

    CHECK_THROWS_AS(lag_indices(100), ValidationError);

    for (std::int64_t t = 672; t < 672 + 2000; t += 97) {
        auto li = lag_indices(t);
        CHECK(t - li.t_minus_d == 96);
        CHECK(t - li.t_minus_w == 672);
    }
}

TEST_CASE("road graph invariants") {
    std::vector<LinkRecord> links = {
        {1, 10, 11, 500.0, 80.0},
        {2, 11, 12, 400.0, 90.0},
    };
    RoadGraph g(links);
    CHECK(g.size() == 2);
    CHECK(g.nodes().size() == 3);
    CHECK(g.link(1).length_m == 500.0);
    CHECK(g.links_into(11) == std::vector<LinkId>{1});
    CHECK(g.links_out_of(11) == std::vector<LinkId>{2});
    CHECK_THROWS_AS(g.link(99), ValidationError);

    links.push_back({1, 12, 13, 100.0, 50.0}); // duplicate id
    CHECK_THROWS_AS(RoadGraph(links), ValidationError);
    CHECK_THROWS_AS(RoadGraph({{5, 0, 1, -2.0, 50.0}}), ValidationError);
    CHECK_THROWS_AS(RoadGraph({{5, 0, 1, 2.0, 0.0}}), ValidationError);
}

TEST_CASE("graph csv round trip") {
    std::vector<LinkRecord> links = {
        {7, 1, 2, 512.25, 88.125},
        {8, 2, 1, 333.5, 61.0},
    };
    RoadGraph g(links);
    std::string path = "test_graph_roundtrip.csv";
    write_graph_csv(g, path);
    RoadGraph g2 = read_graph_csv(path);
    REQUIRE(g2.size() == 2);
    CHECK(g2.link(7).length_m == 512.25);
    CHECK(g2.link(7).free_flow_kmh == 88.125);
    CHECK(g2.link(8).from_node == 2);
    std::remove(path.c_str());
}

TEST_CASE("series set enforces shared axis and sane values") {
    TimeAxis axis(kSunday, 10);
    SeriesSet set(axis);
    SpeedSeries s;
    s.link_id = 1;
    s.values = Eigen::VectorXd::Constant(10, 50.0);
    s.mask.assign(10, 1);
    set.insert(s);
    CHECK_THROWS_AS(set.insert(s), ValidationError); // duplicate

    SpeedSeries bad = s;
    bad.link_id = 2;
    bad.values = Eigen::VectorXd::Constant(9, 50.0);
    bad.mask.assign(9, 1);
    CHECK_THROWS_AS(set.insert(bad), ValidationError);

    set.validate();
    set.at(1).values[3] = 400.0; // above the sanity ceiling
    CHECK_THROWS_AS(set.validate(), ValidationError);
    set.at(1).values[3] = 400.0;
    set.at(1).mask[3] = 0; // masked points are exempt
    set.validate();
}

TEST_CASE("series set slice and binary round trip") {
    TimeAxis axis(kSunday, 96);
    SeriesSet set(axis);
    for (LinkId id : {3L, 1L, 2L}) {
        SpeedSeries s;
        s.link_id = id;
        s.values.resize(96);
        for (int t = 0; t < 96; ++t) s.values[t] = static_cast<double>(id * 100 + t);
        s.mask.assign(96, 1);
        s.mask[5] = 0;
        set.insert(s);
    }
    SeriesSet sub = set.slice(10, 20);
    CHECK(sub.axis().count() == 10);
    CHECK(sub.axis().start() == axis.timestamp(10));
    CHECK(sub.at(2).values[0] == 210.0);

    std::string path = "test_series_roundtrip.bin";
    write_series_set(set, path);
    SeriesSet rt = read_series_set(path);
    CHECK(rt.axis() == set.axis());
    REQUIRE(rt.size() == 3);
    CHECK(rt.at(3).values.isApprox(set.at(3).values, 0.0));
    CHECK(rt.at(1).mask[5] == 0);
    std::remove(path.c_str());
}

TEST_CASE("toml subset parser") {
    TomlTable t = parse_toml("top = 3\n[sec]\na = 1.5\nb = \"x\" # comment\nflag = true\n"
                             "arr = [5, 4, 3]\n");
    CHECK(t.at("top").as_int("top") == 3);
    CHECK(t.at("sec.a").as_float("sec.a") == 1.5);
    CHECK(t.at("sec.b").as_string("sec.b") == "x");
    CHECK(t.at("sec.flag").as_bool("sec.flag"));
    CHECK(t.at("sec.arr").as_int_array("sec.arr") == std::vector<std::int64_t>{5, 4, 3});
    CHECK_THROWS_AS(parse_toml("a = \n"), ValidationError);
    CHECK_THROWS_AS(parse_toml("a = 1\na = 2\n"), ValidationError);
    CHECK_THROWS_AS(t.at("top").as_string("top"), ValidationError);
}
