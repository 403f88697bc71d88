#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "anchorlab/error.hpp"
#include "anchorlab/experiments.hpp"
#include "anchorlab/gdop.hpp"
#include "anchorlab/localizers.hpp"
#include "anchorlab/noise.hpp"

using namespace anchorlab;

namespace {

// Random placement with every anchor triple reasonably far from collinear.
AnchorSet random_placement(std::mt19937_64& rng, std::size_t m) {
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (;;) {
        std::vector<Point2D> pts;
        for (std::size_t i = 0; i < m; ++i) pts.push_back({u(rng), u(rng)});
        double best = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                for (std::size_t k = j + 1; k < m; ++k) {
                    const Point2D a = pts[j] - pts[i], b = pts[k] - pts[i];
                    best = std::max(best, std::abs(a.x * b.y - a.y * b.x));
                }
            }
        }
        if (best > 500.0) return AnchorSet::from_points(pts);
    }
}

double residual(Point2D q, Point2D pi, Point2D pj, double di, double dj) {
    return std::abs(distance(q, pi) - di) + std::abs(distance(q, pj) - dj);
}

}  // namespace

TEST(Method, Names) {
    EXPECT_STREQ(to_string(Method::Tplm), "tplm");
    EXPECT_EQ(parse_method("gdm"), Method::Gdm);
    EXPECT_THROW(parse_method("newton"), Error);
}

TEST(Lsm, ExactRangesGiveExactPosition) {
    const auto ap = placements::ap1();
    const auto d = ap.distances_from({50, 50});
    const auto e = lsm_solve(ap, d);
    EXPECT_NEAR(e.position.x, 50.0, 1e-9);
    EXPECT_NEAR(e.position.y, 50.0, 1e-9);
    EXPECT_EQ(e.method, Method::Lsm);
}

TEST(Lsm, CollinearIsSingular) {
    const Point2D line[] = {{0, 0}, {50, 0}, {100, 0}};
    const auto anchors = AnchorSet::from_points(line);
    try {
        lsm_solve(anchors, anchors.distances_from({20, 30}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Singular);
    }
}

TEST(Lsm, NeedsThreeAnchorsAndMatchingRanges) {
    const Point2D two[] = {{0, 0}, {10, 0}};
    const auto pair = AnchorSet::from_points(two);
    EXPECT_THROW(lsm_solve(pair, pair.distances_from({3, 4})), Error);
    const std::vector<double> short_ranges{1.0, 2.0};
    try {
        lsm_solve(placements::ap1(), short_ranges);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Mismatch);
    }
}

TEST(Objective, ZeroAtTruth) {
    const auto ap = placements::ap2();
    const Point2D p{31, 77};
    EXPECT_LT(range_objective(ap, ap.distances_from(p), p), 1e-18);
    const auto g = range_objective_gradient(ap, ap.distances_from(p), p);
    EXPECT_NEAR(g.x, 0.0, 1e-6);
    EXPECT_NEAR(g.y, 0.0, 1e-6);
}

TEST(ObjectiveProperty, GradientMatchesCentralDifferences) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::normal_distribution<double> noise(0.0, 2.0);
    const double h = 1e-6;
    for (int k = 0; k < 1000; ++k) {
        const auto anchors = random_placement(rng, 3 + k % 4);
        const Point2D truth{u(rng), u(rng)};
        auto d = anchors.distances_from(truth);
        for (double& x : d) x = std::max(0.0, x + noise(rng));
        const Point2D p{u(rng), u(rng)};
        const auto g = range_objective_gradient(anchors, d, p);
        const double fx = (range_objective(anchors, d, {p.x + h, p.y}) - range_objective(anchors, d, {p.x - h, p.y})) / (2 * h);
        const double fy = (range_objective(anchors, d, {p.x, p.y + h}) - range_objective(anchors, d, {p.x, p.y - h})) / (2 * h);
        const double scale = std::max(std::hypot(g.x, g.y), 1.0);
        ASSERT_NEAR(fx, g.x, 1e-5 * scale) << "state " << k;
        ASSERT_NEAR(fy, g.y, 1e-5 * scale) << "state " << k;
    }
}

TEST(Gdm, FromTruthWithoutNoiseStopsImmediately) {
    const auto ap = placements::ap1();
    const Point2D truth{37.5, 62.25};
    const auto e = gdm_solve(ap, ap.distances_from(truth), truth);
    EXPECT_EQ(e.status, EstimateStatus::Converged);
    EXPECT_LE(e.iterations, 1);
    EXPECT_NEAR(e.position.x, truth.x, 1e-9);
    EXPECT_NEAR(e.position.y, truth.y, 1e-9);
}

TEST(Gdm, OversizedStepDivergesAndKeepsLastIterate) {
    const auto ap = placements::ap1();
    const Point2D truth{40, 40};
    const Point2D init{45, 35};
    const auto e = gdm_solve(ap, ap.distances_from(truth), init, GdmConfig{1.0, 1e-3, 100});
    EXPECT_EQ(e.status, EstimateStatus::Diverged);
    EXPECT_FALSE(e.ok());
    EXPECT_EQ(e.position, init);
}

TEST(Gdm, IterationLimit) {
    const auto ap = placements::ap1();
    const auto e = gdm_solve(ap, ap.distances_from({40, 40}), {60, 20}, GdmConfig{1e-8, 1e-9, 3});
    EXPECT_EQ(e.status, EstimateStatus::IterationLimit);
    EXPECT_EQ(e.iterations, 3);
    EXPECT_TRUE(e.ok());
}

TEST(Gdm, RejectsBadConfig) {
    const auto ap = placements::ap1();
    const auto d = ap.distances_from({40, 40});
    EXPECT_THROW(gdm_solve(ap, d, {0, 0}, GdmConfig{0.0, 1e-3, 100}), Error);
    EXPECT_THROW(gdm_solve(ap, d, {0, 0}, GdmConfig{1e-5, -1.0, 100}), Error);
    EXPECT_THROW(gdm_solve(ap, d, {0, 0}, GdmConfig{1e-5, 1e-3, 0}), Error);
    EXPECT_THROW(gdm_solve(ap, d, {NAN, 0}, GdmConfig{}), Error);
}

// Iterates are never accepted uphill, and almost every run stays on the descent path.
TEST(GdmProperty, ObjectiveNeverIncreases) {
    const auto ap = placements::ap1();
    const auto t = standard_hilbert_trajectory();
    NoiseStream noise({NoiseKind::Gaussian, 0.3, 4}, 0);
    std::size_t runs = 0, diverged = 0;
    for (std::size_t k = 0; k < t.size(); k += 41) {
        const auto s = measure(ap, t[k], noise);
        const Point2D init = lsm_solve(ap, s.distances).position;
        double previous = range_objective(ap, s.distances, init);
        for (int limit = 1; limit <= 15; ++limit) {
            const auto e = gdm_solve(ap, s.distances, init, GdmConfig{1e-5, 1e-3, limit});
            const double f = range_objective(ap, s.distances, e.position);
            ASSERT_LE(f, previous) << "point " << k << " limit " << limit;
            previous = f;
            if (e.status != EstimateStatus::IterationLimit) break;
        }
        const auto full = gdm_solve(ap, s.distances, init);
        ++runs;
        diverged += full.ok() ? 0 : 1;
    }
    EXPECT_LE(diverged * 100, runs);
}

TEST(Circles, SixEightTen) {
    const auto c = circle_candidates({0, 0}, {10, 0}, 6, 8);
    EXPECT_FALSE(c.clamped);
    EXPECT_NEAR(c.upper.x, 3.6, 1e-12);
    EXPECT_NEAR(c.upper.y, 4.8, 1e-12);
    EXPECT_NEAR(c.lower.x, 3.6, 1e-12);
    EXPECT_NEAR(c.lower.y, -4.8, 1e-12);
}

TEST(Circles, VerticalAxis) {
    const auto c = circle_candidates({0, 0}, {0, 10}, 6, 8);
    // Left of the upward axis is negative x.
    EXPECT_NEAR(c.upper.x, -4.8, 1e-12);
    EXPECT_NEAR(c.upper.y, 3.6, 1e-12);
    EXPECT_NEAR(c.lower.x, 4.8, 1e-12);
}

TEST(Circles, DisjointCirclesClampToAxis) {
    const auto c = circle_candidates({0, 0}, {10, 0}, 2, 3);
    EXPECT_TRUE(c.clamped);
    EXPECT_NEAR(c.upper.x, 4.75, 1e-12);
    EXPECT_NEAR(c.upper.y, 0.0, 1e-12);
    EXPECT_EQ(c.upper, c.lower);
}

TEST(Circles, MatchGridSearch) {
    const Point2D pi{2, -1}, pj{9, 6};
    const double di = 5.5, dj = 6.0;
    const auto c = circle_candidates(pi, pj, di, dj);
    // Dense search for the two residual minima, one on each side of the axis.
    const Point2D axis = pj - pi;
    Point2D best[2];
    double best_r[2] = {1e9, 1e9};
    for (double x = -10; x <= 20; x += 0.005) {
        for (double y = -15; y <= 15; y += 0.005) {
            const Point2D q{x, y};
            const Point2D w = q - pi;
            const int side = axis.x * w.y - axis.y * w.x > 0 ? 0 : 1;
            const double r = residual(q, pi, pj, di, dj);
            if (r < best_r[side]) {
                best_r[side] = r;
                best[side] = q;
            }
        }
    }
    EXPECT_LT(distance(best[0], c.upper), 0.01);
    EXPECT_LT(distance(best[1], c.lower), 0.01);
}

TEST(CirclesProperty, CandidatesLieOnBothCirclesAndMirror) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    int checked = 0;
    for (int k = 0; k < 5000; ++k) {
        const Point2D pi{u(rng), u(rng)}, pj{u(rng), u(rng)}, p{u(rng), u(rng)};
        const double di = distance(p, pi) * (1 + 0.01 * u(rng) / 100);
        const double dj = distance(p, pj);
        const auto c = circle_candidates(pi, pj, di, dj);
        if (c.clamped) continue;
        ++checked;
        for (const Point2D q : {c.upper, c.lower}) {
            ASSERT_NEAR(distance(q, pi), di, 1e-9 * std::max(1.0, di));
            ASSERT_NEAR(distance(q, pj), dj, 1e-9 * std::max(1.0, dj));
        }
        // Midpoint on the axis and the chord perpendicular to it.
        const Point2D mid = 0.5 * (c.upper + c.lower);
        const Point2D axis = pj - pi;
        const Point2D w = mid - pi;
        const double len = std::hypot(axis.x, axis.y);
        ASSERT_NEAR((axis.x * w.y - axis.y * w.x) / len, 0.0, 1e-9 * std::max(1.0, len));
        const Point2D chord = c.upper - c.lower;
        ASSERT_NEAR((chord.x * axis.x + chord.y * axis.y) / len, 0.0, 1e-9 * std::max(1.0, len));
    }
    EXPECT_GT(checked, 1000);
}

TEST(Tplm, PicksCandidateNearestTheReference) {
    const Point2D pts[] = {{0, 0}, {10, 0}};
    const auto pair = AnchorSet::from_points(pts);
    const std::vector<double> d{6, 8};
    auto e = tplm_solve(pair, d, {3.6, 4.0});
    EXPECT_NEAR(e.position.x, 3.6, 1e-12);
    EXPECT_NEAR(e.position.y, 4.8, 1e-12);
    e = tplm_solve(pair, d, {3.6, -1.0});
    EXPECT_NEAR(e.position.y, -4.8, 1e-12);
    ASSERT_TRUE(e.pair.has_value());
    EXPECT_EQ(*e.pair, (AnchorPair{0, 1}));
}

TEST(Tplm, TieGoesToUpperCandidate) {
    const Point2D pts[] = {{0, 0}, {10, 0}};
    const auto e = tplm_solve(AnchorSet::from_points(pts), std::vector<double>{6, 8}, {3.6, 0.0});
    EXPECT_NEAR(e.position.y, 4.8, 1e-12);
}

TEST(Tplm, FlagsClampedRadicand) {
    const Point2D pts[] = {{0, 0}, {10, 0}};
    const auto e = tplm_solve(AnchorSet::from_points(pts), std::vector<double>{2, 3}, {5, 5});
    EXPECT_TRUE(e.radicand_clamped);
    EXPECT_NEAR(e.position.x, 4.75, 1e-12);
}

TEST(TplmProperty, PhaseOnePairIsBruteForceArgmin) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const auto anchors = random_placement(rng, 3 + k % 5);
        auto d = anchors.distances_from({u(rng), u(rng)});
        for (double& x : d) x = std::max(0.0, x + noise(rng));
        double best = std::numeric_limits<double>::infinity(), second = best;
        AnchorPair arg{0, 1};
        for (std::size_t i = 0; i < anchors.size(); ++i) {
            for (std::size_t j = i + 1; j < anchors.size(); ++j) {
                const double g = pair_gdop_from_ranges(d[i], d[j], distance(anchors.position(i), anchors.position(j)));
                if (g < best) {
                    second = best;
                    best = g;
                    arg = {i, j};
                } else if (g < second) {
                    second = g;
                }
            }
        }
        if (!std::isfinite(best) || second - best <= 1e-9 * best) continue;
        const auto e = tplm_solve(anchors, d, lsm_solve(anchors, d).position);
        ASSERT_EQ(*e.pair, arg) << "state " << k;
    }
}

TEST(LocalizersProperty, ZeroNoiseConsistency) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int k = 0; k < 2000; ++k) {
        const auto anchors = random_placement(rng, 3 + k % 4);
        const Point2D truth{u(rng), u(rng)};
        bool on_anchor = false;
        for (const auto& a : anchors.anchors()) on_anchor = on_anchor || distance(a.position, truth) < 1e-3;
        if (on_anchor) continue;
        const auto d = anchors.distances_from(truth);
        const auto lsm = lsm_solve(anchors, d);
        ASSERT_NEAR(lsm.position.x, truth.x, 1e-9) << k;
        ASSERT_NEAR(lsm.position.y, truth.y, 1e-9) << k;
        const auto tplm = tplm_solve(anchors, d, lsm.position);
        ASSERT_NEAR(tplm.position.x, truth.x, 1e-9) << k;
        ASSERT_NEAR(tplm.position.y, truth.y, 1e-9) << k;
        const auto gdm = gdm_solve(anchors, d, lsm.position);
        ASSERT_TRUE(gdm.ok());
        ASSERT_LT(distance(gdm.position, truth), 1e-3) << k;
    }
}

TEST(LocalizersProperty, TranslationEquivariance) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::normal_distribution<double> noise(0.0, 0.3);
    for (int k = 0; k < 500; ++k) {
        const auto anchors = random_placement(rng, 3 + k % 3);
        const Point2D shift{u(rng) - 50, u(rng) - 50};
        const auto moved = anchors.translated(shift);
        auto d = anchors.distances_from({u(rng), u(rng)});
        for (double& x : d) x = std::max(0.0, x + noise(rng));

        const auto a = lsm_solve(anchors, d), b = lsm_solve(moved, d);
        ASSERT_LT(distance(a.position + shift, b.position), 1e-7);
        const auto ta = tplm_solve(anchors, d, a.position), tb = tplm_solve(moved, d, b.position);
        ASSERT_LT(distance(ta.position + shift, tb.position), 1e-7);
        const auto ga = gdm_solve(anchors, d, a.position), gb = gdm_solve(moved, d, b.position);
        if (ga.ok() && gb.ok()) ASSERT_LT(distance(ga.position + shift, gb.position), 1e-6);
    }
}

TEST(Estimate, RecordsElapsedTime) {
    const auto ap = placements::ap1();
    const auto d = ap.distances_from({10, 20});
    EXPECT_GE(lsm_solve(ap, d).elapsed.count(), 0);
    EXPECT_GE(gdm_solve(ap, d, {12, 18}).elapsed.count(), 0);
}
