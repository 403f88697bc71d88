#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "anchorlab/csv_io.hpp"
#include "anchorlab/error.hpp"
#include "anchorlab/experiments.hpp"
#include "anchorlab/geo.hpp"
#include "anchorlab/grid_export.hpp"
#include "anchorlab/replay.hpp"

using namespace anchorlab;

namespace {

AnchorSet testbed_anchors() {
    const auto geo = GeoTransform::field_testbed();
    return AnchorSet({{4, geo.to_local(-74.475585, 40.538468)},
                      {5, geo.to_local(-74.475287, 40.53856)},
                      {6, geo.to_local(-74.475186, 40.538294)}});
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST(Format, ExactAndFixed) {
    EXPECT_EQ(format_exact(0.1), "0.1");
    EXPECT_EQ(parse_double(format_exact(1.0 / 3.0)), 1.0 / 3.0);
    EXPECT_EQ(format_fixed(1.5012345678), "1.501235");
    EXPECT_EQ(format_fixed(INFINITY), "inf");
    EXPECT_THROW(parse_double("1.5x"), Error);
}

TEST(Region, ParseAndFormat) {
    const auto r = parse_region("0,0,100,100");
    EXPECT_EQ(r, traversal_area());
    EXPECT_EQ(parse_region(format_region(Region({-1.25, 2}, {3, 4.5}))), Region({-1.25, 2}, {3, 4.5}));
    EXPECT_THROW(parse_region("0,0,100"), Error);
    EXPECT_THROW(parse_region("0,0,-1,100"), Error);
}

TEST(RoundTrip, Trajectory) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    std::vector<Point2D> pts;
    for (int i = 0; i < 500; ++i) pts.push_back({u(rng), u(rng)});
    std::stringstream s;
    write_points_csv(s, pts);
    EXPECT_EQ(read_points_csv(s), pts);
}

TEST(RoundTrip, Anchors) {
    const AnchorSet a({{7, {0.1, 1e-7}}, {3, {-5.123456789012, 99}}, {12, {1.0 / 3.0, 2.0 / 3.0}}});
    std::stringstream s;
    write_anchors_csv(s, a);
    const auto b = read_anchors_csv(s);
    ASSERT_EQ(b.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(b[i].id, a[i].id);
        EXPECT_EQ(b[i].position, a[i].position);
    }
}

TEST(RoundTrip, RangeLog) {
    RangeLog log;
    log.anchor_count = 3;
    log.has_truth = true;
    for (int k = 0; k < 20; ++k) {
        log.rows.push_back({0.5 * k, {k / 7.0, 2.0 + k / 3.0, 100.0 / (k + 1)}, Point2D{k * 1.1, -k / 9.0}});
    }
    std::stringstream s;
    write_range_log(s, log);
    const auto back = read_range_log(s);
    EXPECT_EQ(back.anchor_count, 3u);
    EXPECT_TRUE(back.has_truth);
    EXPECT_EQ(back.malformed, 0u);
    EXPECT_EQ(back.rows, log.rows);
}

TEST(RangeLog, SkipsMalformedRows) {
    std::istringstream in(
        "epoch,d1,d2,d3\n"
        "0,1,2,3\n"
        "0.5,1,2\n"
        "1,1,x,3\n"
        "1.5,1,-2,3\n"
        "1,1,2,3\n"
        "0.7,1,2,3\n"
        "2,1,2,3\n");
    const auto log = read_range_log(in);
    EXPECT_EQ(log.rows.size(), 3u);
    EXPECT_EQ(log.malformed, 4u);
    EXPECT_FALSE(log.has_truth);
}

TEST(Anchors, GeographicFilesNeedATransform) {
    const std::string text = "id,lon,lat\n4,-74.475585,40.538468\n5,-74.475287,40.53856\n";
    std::istringstream a(text);
    EXPECT_THROW(read_anchors_csv(a), Error);
    std::istringstream b(text);
    const auto anchors = read_anchors_csv(b, GeoTransform::field_testbed());
    EXPECT_EQ(anchors[0].id, 4);
    EXPECT_NEAR(anchors.position(0).x, 65.345179, 0.1);
}

TEST(Anchors, RejectsBadFiles) {
    std::istringstream header("a,b,c\n1,2,3\n");
    EXPECT_THROW(read_anchors_csv(header), Error);
    std::istringstream fields("id,x,y\n1,2\n");
    EXPECT_THROW(read_anchors_csv(fields), Error);
    EXPECT_THROW(load_anchors("/nonexistent/anchors.csv"), Error);
}

TEST(Geo, OriginMapsToZero) {
    const auto t = GeoTransform::field_testbed();
    const auto p = geo_to_local(t, t.origin_lon, t.origin_lat);
    EXPECT_EQ(p.x, 0.0);
    EXPECT_EQ(p.y, 0.0);
}

TEST(Geo, IdentityRotationGivesScaledOffsets) {
    const GeoTransform t{10, 20, 1, 1, 0};
    const auto p = geo_to_local(t, 12.5, 19);
    EXPECT_DOUBLE_EQ(p.x, 2.5);
    EXPECT_DOUBLE_EQ(p.y, -1.0);
}

TEST(Geo, TestbedAnchorRows) {
    const auto t = GeoTransform::field_testbed();
    const struct {
        double lon, lat, x, y;
    } rows[] = {{-74.475585, 40.538468, 65.345179, 52.75145},
                {-74.475287, 40.53856, 92.580022, 52.83239},
                {-74.475186, 40.538294, 89.52274, 22.232383}};
    for (const auto& r : rows) {
        const auto p = geo_to_local(t, r.lon, r.lat);
        EXPECT_LT(std::hypot(p.x - r.x, p.y - r.y), 0.1) << r.lon;
    }
}

TEST(Geo, Injective) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1e-3, 1e-3);
    const auto t = GeoTransform::field_testbed();
    for (int i = 0; i < 1000; ++i) {
        const double lon = t.origin_lon + u(rng), lat = t.origin_lat + u(rng);
        const double lon2 = lon + u(rng) * 1e-3, lat2 = lat + u(rng) * 1e-3;
        if (lon == lon2 && lat == lat2) continue;
        const auto a = t.to_local(lon, lat), b = t.to_local(lon2, lat2);
        // Rotation preserves length, so the image distance is bounded below by the smaller scale.
        const double dmin = std::min(t.x_scale, t.y_scale) * std::hypot(lon - lon2, lat - lat2);
        ASSERT_GE(distance(a, b), dmin * (1 - 1e-6));
    }
}

TEST(Geo, TransformFile) {
    std::stringstream s;
    write_geo_transform(s, GeoTransform::field_testbed());
    const auto t = read_geo_transform(s);
    EXPECT_EQ(t.x_scale, 84719.0);
    EXPECT_EQ(t.rotation, 0.381583);
    std::istringstream bad("lon0,lat0,x_scale,y_scale,alpha\n0,0,-1,1,0\n");
    EXPECT_THROW(read_geo_transform(bad), Error);
}

TEST(Grid, CsvLayout) {
    const std::vector<double> v{1, 2, 3, 4, 5, INFINITY};
    std::ostringstream out;
    write_grid_csv(out, 3, 2, v);
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0], "# 3 2");
    EXPECT_EQ(lines[1], "1.000000,2.000000,3.000000");
    EXPECT_EQ(lines[2], "4.000000,5.000000,inf");
    EXPECT_THROW(write_grid_csv(out, 2, 2, v), Error);
}

TEST(Grid, PgmIsNorthUp) {
    const std::vector<double> v{1, 2, 3, INFINITY};
    std::ostringstream out;
    write_grid_pgm(out, 2, 2, v);
    const std::string s = out.str();
    ASSERT_EQ(s.rfind("P5\n", 0), 0u);
    const std::string pixels = s.substr(s.size() - 4);
    // Top image row is the high-y grid row.
    EXPECT_EQ(static_cast<unsigned char>(pixels[0]), 254);
    EXPECT_EQ(static_cast<unsigned char>(pixels[1]), 255);
    EXPECT_EQ(static_cast<unsigned char>(pixels[2]), 0);
    EXPECT_EQ(static_cast<unsigned char>(pixels[3]), 127);
    EXPECT_NE(s.find("\n2 2\n255\n"), std::string::npos);
}

TEST(Reports, StatsCsv) {
    MethodStats s{Method::Tplm, 0.4, 0.2, 0.01, 10, 0, 0};
    std::ostringstream out;
    write_stats_csv(out, "ap1", 0.3, std::span<const MethodStats>(&s, 1));
    EXPECT_EQ(out.str(), "method,ap,level,ave,std,time\ntplm,ap1,0.300000,0.400000,0.200000,0.010000\n");
}

TEST(FieldLog, GapMarkers) {
    RangeLog log;
    log.anchor_count = 3;
    for (double t : {0.0, 0.5, 1.0, 11.0, 11.5}) log.rows.push_back({t, {10, 20, 30}, std::nullopt});
    const auto field = make_field_log(log);
    EXPECT_EQ(field.gaps, 1u);
    EXPECT_EQ(field.gap_before, (std::vector<bool>{false, false, false, true, false}));
    EXPECT_THROW(make_field_log(log, 0.0), Error);

    const auto result = replay(field, placements::ap1());
    ASSERT_EQ(result.rows.size(), 5u);
    EXPECT_TRUE(result.rows[3].gap);
    EXPECT_EQ(result.gaps, 1u);
    std::ostringstream out;
    write_replay_csv(out, result);
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 6u);
    EXPECT_EQ(lines[0], "epoch,gap,lsm_x,lsm_y,gdm_x,gdm_y,tplm_x,tplm_y");
    EXPECT_EQ(lines[4].rfind("11.000000,1,", 0), 0u);
}

TEST(Replay, AnchorCountMismatch) {
    std::istringstream in("epoch,d1,d2,d3,d4\n0,10,20,30,40\n");
    const auto field = make_field_log(read_range_log(in));
    try {
        replay(field, placements::ap1());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Mismatch);
    }
}

TEST(Replay, ZeroNoiseRoundTrip) {
    const auto anchors = testbed_anchors();
    const auto path = hilbert_trajectory(3, Region({20, 10}, {80, 60}), 120).points();
    const auto log = synthesize_range_log(anchors, path, NoiseModel{NoiseKind::Gaussian, 0.0, 1});
    ASSERT_EQ(log.rows.size(), path.size());
    EXPECT_DOUBLE_EQ(log.rows[3].epoch, 1.5);
    const auto result = replay(make_field_log(log), anchors);
    for (const auto& row : result.rows) {
        for (std::size_t mi = 0; mi < result.methods.size(); ++mi) {
            const double tol = result.methods[mi] == Method::Gdm ? 1e-3 : 1e-9;
            ASSERT_LT(distance(row.estimates[mi], *row.truth), tol);
        }
    }
    for (const auto& s : result.stats) EXPECT_EQ(s.samples, path.size());
}

TEST(Replay, TwoPhaseBeatsLeastSquaresOnTheTestbed) {
    const auto anchors = testbed_anchors();
    const auto path = standard_hilbert_trajectory().points();
    const NoiseModel noise{NoiseKind::Gaussian, 0.3, 17};
    const auto result = replay(make_field_log(synthesize_range_log(anchors, path, noise)), anchors,
                               {Method::Lsm, Method::Tplm});
    EXPECT_LT(result.stats[1].mean, result.stats[0].mean);

    // Same configuration through the traversal runner.
    ExperimentSpec spec{anchors, path, noise};
    spec.repetitions = 1;
    spec.methods = {Method::Lsm, Method::Tplm};
    const auto oracle = run_traversal(spec);
    EXPECT_LT(oracle.stats[1].mean, oracle.stats[0].mean);
    EXPECT_NEAR(result.stats[0].mean, oracle.stats[0].mean, 0.1 * oracle.stats[0].mean);
    EXPECT_NEAR(result.stats[1].mean, oracle.stats[1].mean, 0.1 * oracle.stats[1].mean);
}
