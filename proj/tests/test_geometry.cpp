#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "anchorlab/error.hpp"
#include "anchorlab/experiments.hpp"
#include "anchorlab/geometry.hpp"

using namespace anchorlab;

TEST(Distance, SymmetricAndNonNegative) {
    const Point2D a{1.5, -2.0};
    const Point2D b{-4.0, 7.25};
    EXPECT_DOUBLE_EQ(distance(a, b), distance(b, a));
    EXPECT_DOUBLE_EQ(distance(a, a), 0.0);
    EXPECT_DOUBLE_EQ(distance({0, 0}, {3, 4}), 5.0);
}

TEST(AnchorSet, RejectsTooFewAnchors) {
    const Point2D one[] = {{0, 0}};
    EXPECT_THROW(AnchorSet::from_points(one), Error);
}

TEST(AnchorSet, RejectsDuplicateIdsAndPositions) {
    EXPECT_THROW(AnchorSet({{1, {0, 0}}, {1, {1, 0}}}), Error);
    EXPECT_THROW(AnchorSet({{1, {0, 0}}, {2, {0, 0}}}), Error);
    EXPECT_THROW(AnchorSet({{1, {0, 0}}, {2, {NAN, 0}}}), Error);
}

TEST(AnchorSet, FromPointsNumbersFromOne) {
    const auto ap = placements::ap1();
    ASSERT_EQ(ap.size(), 3u);
    EXPECT_EQ(ap[0].id, 1);
    EXPECT_EQ(ap[2].id, 3);
    EXPECT_EQ(ap.position(1), (Point2D{0, 0}));
}

TEST(AnchorSet, DistancesAndBaselines) {
    const auto ap = placements::ap1();
    const auto d = ap.distances_from({30, 40});
    ASSERT_EQ(d.size(), 3u);
    EXPECT_DOUBLE_EQ(d[1], 50.0);
    EXPECT_DOUBLE_EQ(ap.baseline(0, 2), std::sqrt(2.0) * 100.0);
    EXPECT_DOUBLE_EQ(ap.baseline(2, 0), ap.baseline(0, 2));
}

TEST(AnchorSet, Collinearity) {
    const Point2D line[] = {{0, 0}, {50, 0}, {100, 0}};
    EXPECT_TRUE(AnchorSet::from_points(line).all_collinear());
    EXPECT_FALSE(placements::ap1().all_collinear());
    EXPECT_FALSE(placements::ap2().all_collinear());
    const Point2D two[] = {{0, 0}, {1, 1}};
    EXPECT_TRUE(AnchorSet::from_points(two).all_collinear());
}

TEST(Region, ValidatesAndMeasures) {
    EXPECT_THROW(Region({0, 0}, {0, 10}), Error);
    EXPECT_THROW(Region({0, 0}, {10, -1}), Error);
    const Region r({0, 0}, {100, 50});
    EXPECT_DOUBLE_EQ(r.area(), 5000.0);
    EXPECT_EQ(r.centroid(), (Point2D{50, 25}));
    EXPECT_TRUE(r.contains({100, 50}));
    EXPECT_FALSE(r.contains({100.5, 50}));
}

TEST(Region, NodesIncludeBoundary) {
    const Region r({-1, 2}, {3, 10});
    EXPECT_EQ(r.node(0, 0, 5, 9), (Point2D{-1, 2}));
    EXPECT_EQ(r.node(4, 8, 5, 9), (Point2D{3, 10}));
    EXPECT_DOUBLE_EQ(r.node(2, 4, 5, 9).x, 1.0);
    EXPECT_DOUBLE_EQ(r.node(2, 4, 5, 9).y, 6.0);
}

TEST(Trajectory, RequiresPositiveLength) {
    EXPECT_THROW(Trajectory({{1, 1}}), Error);
    EXPECT_THROW(Trajectory({{1, 1}, {1, 1}}), Error);
    const Trajectory t({{0, 0}, {3, 4}, {3, 0}});
    EXPECT_DOUBLE_EQ(arc_length(t), 9.0);
    EXPECT_EQ(t.reversed()[0], (Point2D{3, 0}));
}

TEST(Resample, KeepsEndpointsAndSpacing) {
    const std::vector<Point2D> poly{{0, 0}, {10, 0}, {10, 5}};
    const auto t = resample_by_arc_length(poly, 7);
    ASSERT_EQ(t.size(), 7u);
    EXPECT_EQ(t[0], poly.front());
    EXPECT_EQ(t[6], poly.back());
    for (std::size_t k = 1; k < t.size(); ++k) EXPECT_NEAR(distance(t[k - 1], t[k]), 2.5, 1e-12);
}

TEST(Resample, RejectsTooFewPoints) {
    const std::vector<Point2D> poly{{0, 0}, {10, 0}};
    EXPECT_THROW(resample_by_arc_length(poly, 1), Error);
}

TEST(Hilbert, OrderOneIsAnUpsideDownU) {
    const auto v = hilbert_vertices(1, Region({0, 0}, {2, 2}));
    ASSERT_EQ(v.size(), 4u);
    EXPECT_EQ(v[0], (Point2D{0.5, 1.5}));
    EXPECT_EQ(v[1], (Point2D{0.5, 0.5}));
    EXPECT_EQ(v[2], (Point2D{1.5, 0.5}));
    EXPECT_EQ(v[3], (Point2D{1.5, 1.5}));
}

TEST(Hilbert, RejectsBadOrder) {
    EXPECT_THROW(hilbert_vertices(0, traversal_area()), Error);
    EXPECT_THROW(hilbert_vertices(16, traversal_area()), Error);
}

// Brute force: every cell center visited once, consecutive cells share an edge.
TEST(Hilbert, VisitsEveryCellOnceThroughNeighbours) {
    for (int order = 1; order <= 4; ++order) {
        const std::size_t side = std::size_t{1} << order;
        const Region r({0, 0}, {100, 100});
        const double cell = 100.0 / static_cast<double>(side);
        const auto v = hilbert_vertices(order, r);
        ASSERT_EQ(v.size(), side * side);

        std::set<std::pair<long, long>> cells;
        for (const auto& p : v) {
            const double fx = p.x / cell - 0.5;
            const double fy = p.y / cell - 0.5;
            ASSERT_NEAR(fx, std::round(fx), 1e-9);
            ASSERT_NEAR(fy, std::round(fy), 1e-9);
            cells.insert({std::lround(fx), std::lround(fy)});
        }
        EXPECT_EQ(cells.size(), side * side) << "order " << order;
        for (const auto& [ix, iy] : cells) {
            EXPECT_GE(ix, 0);
            EXPECT_LT(ix, static_cast<long>(side));
            EXPECT_GE(iy, 0);
            EXPECT_LT(iy, static_cast<long>(side));
        }
        for (std::size_t k = 1; k < v.size(); ++k) {
            EXPECT_NEAR(distance(v[k - 1], v[k]), cell, 1e-9) << "order " << order << " step " << k;
        }
        // Starts upper-left, ends upper-right.
        EXPECT_NEAR(v.front().x, cell / 2, 1e-9);
        EXPECT_NEAR(v.front().y, 100 - cell / 2, 1e-9);
        EXPECT_NEAR(v.back().x, 100 - cell / 2, 1e-9);
        EXPECT_NEAR(v.back().y, 100 - cell / 2, 1e-9);
    }
}

TEST(Hilbert, StandardTrajectory) {
    const auto t = standard_hilbert_trajectory();
    ASSERT_EQ(t.size(), 8190u);
    const auto v = hilbert_vertices(6, traversal_area());
    EXPECT_EQ(t[0], v.front());
    EXPECT_EQ(t[t.size() - 1], v.back());
    // Sample k sits at arc position k * L / 8189 along 4095 segments of 100/64 m.
    const double cell = 100.0 / 64.0;
    EXPECT_NEAR(arc_length(v), 4095 * cell, 1e-6);
    const double step = 4095 * cell / 8189.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double s = static_cast<double>(k) * step;
        const std::size_t seg = std::min<std::size_t>(static_cast<std::size_t>(s / cell), 4094);
        const double f = s / cell - static_cast<double>(seg);
        const Point2D expected = v[seg] + f * (v[seg + 1] - v[seg]);
        ASSERT_NEAR(t[k].x, expected.x, 1e-9) << k;
        ASSERT_NEAR(t[k].y, expected.y, 1e-9) << k;
    }
    for (const auto& p : t.points()) EXPECT_TRUE(traversal_area().contains(p, 1e-9));
}
