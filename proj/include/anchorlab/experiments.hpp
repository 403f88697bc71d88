#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "anchorlab/geometry.hpp"
#include "anchorlab/localizers.hpp"
#include "anchorlab/noise.hpp"
#include "anchorlab/stats.hpp"

namespace anchorlab {

/// Standard test placements on the 100 x 100 traversal area.
namespace placements {
AnchorSet ap1();  // (0,100), (0,0), (100,0)
AnchorSet ap2();  // (0,100), (7,50), (3,40)
AnchorSet ap3();  // ap1 plus (1,98)
AnchorSet ap4();  // ap2 plus (1,98)
}  // namespace placements

/// 100 x 100 traversal area at the origin.
Region traversal_area();

/// Order-6 Hilbert curve over the traversal area resampled to 8190 points.
Trajectory standard_hilbert_trajectory();

inline const std::vector<Method> kAllMethods{Method::Lsm, Method::Gdm, Method::Tplm};

struct ExperimentSpec {
    AnchorSet anchors;
    std::vector<Point2D> trajectory;
    NoiseModel noise;
    int repetitions = 10;
    std::vector<Method> methods = kAllMethods;
    GdmConfig gdm;
    bool keep_restored = false;
    /// Repetition k draws its noise from substream `substream_base + k`.
    std::uint64_t substream_base = 0;
};

struct MethodStats {
    Method method = Method::Lsm;
    double mean = 0.0;
    double stddev = 0.0;
    double seconds_per_traversal = 0.0;
    std::size_t samples = 0;
    /// Estimates excluded from mean/stddev (gradient descent divergence).
    std::size_t failures = 0;
    /// Gradient descent only.
    double mean_iterations = 0.0;
};

/// One trajectory point of one repetition; `estimates` follows spec.methods.
struct RestoredPoint {
    std::size_t repetition = 0;
    std::size_t index = 0;
    Point2D truth;
    std::vector<Point2D> estimates;
    std::vector<bool> ok;
};

struct TraversalResult {
    std::vector<MethodStats> stats;  // follows spec.methods
    std::vector<RestoredPoint> restored;

    const MethodStats& stats_for(Method method) const;
};

/// Walks the trajectory `repetitions` times. Every point of every repetition
/// gets a fresh range sample, and each requested method estimates the
/// position from it (gradient descent starts at, and the two-phase method
/// disambiguates with, the least-squares estimate). Timing covers each
/// method's whole pipeline including its least-squares step.
TraversalResult run_traversal(const ExperimentSpec& spec);

struct NamedPlacement {
    std::string name;
    AnchorSet anchors;
};

struct SweepSpec {
    std::vector<NamedPlacement> placements;
    std::vector<Point2D> trajectory;
    std::vector<double> levels;
    std::vector<NoiseKind> kinds{NoiseKind::Gaussian, NoiseKind::Uniform};
    int repetitions = 10;
    std::vector<Method> methods{Method::Gdm, Method::Tplm};
    GdmConfig gdm;
    std::uint64_t seed = 1;
};

struct SweepRow {
    std::string placement;
    NoiseKind kind = NoiseKind::Gaussian;
    double level = 0.0;
    MethodStats stats;
};

/// run_traversal for every (placement, kind, level); all cells share the seed.
std::vector<SweepRow> noise_sweep(const SweepSpec& spec);

enum class PlacementArea { Full, UpperHalf };

struct RgapSpec {
    std::size_t anchor_count = 3;
    PlacementArea area = PlacementArea::Full;
    std::size_t placements = 100;
    NoiseModel noise{NoiseKind::Gaussian, 0.3, 1};
    int repetitions = 1;
    std::vector<Method> methods = kAllMethods;
    GdmConfig gdm;
    Region region = traversal_area();
    std::vector<Point2D> trajectory;
};

struct RgapPlacement {
    std::size_t id = 0;
    AnchorSet anchors;
    double score = 0.0;
    std::vector<MethodStats> stats;  // follows spec.methods
};

struct RgapResult {
    std::vector<RgapPlacement> placements;
    double mean_score = 0.0;
    std::vector<double> mean_error;        // per method, over placements
    std::vector<double> score_error_rank;  // Spearman(score, mean error) per method
    std::size_t redraws = 0;
    Histogram score_histogram;
};

/// Draws anchor positions uniformly at random over the chosen area.
/// Placement k reads its coordinates from RandomStream(noise.seed, k), so the
/// first m anchors of a placement do not depend on anchor_count. Collinear
/// draws are discarded and counted.
AnchorSet random_placement(const Region& area, std::size_t anchor_count, std::uint64_t seed,
                           std::uint64_t placement, std::size_t* redraws = nullptr);

Region placement_area(const Region& region, PlacementArea area);

RgapResult rgap_study(const RgapSpec& spec);

}  // namespace anchorlab
