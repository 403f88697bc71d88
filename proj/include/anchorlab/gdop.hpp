#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "anchorlab/geometry.hpp"
#include "anchorlab/noise.hpp"

namespace anchorlab {

/// A pair is declared collinear, and its GDOP infinite, once
/// 1 - cos^2 of the bearing separation drops to this value.
inline constexpr double kCollinearEpsilon = 1e-12;

/// Sentinel for an unbounded GDOP.
inline constexpr double kInfiniteGdop = std::numeric_limits<double>::infinity();

/// Index pair into an AnchorSet, `first < second`.
struct AnchorPair {
    std::size_t first = 0;
    std::size_t second = 1;

    friend bool operator==(AnchorPair, AnchorPair) = default;
};

std::size_t pair_count(std::size_t anchor_count);
/// Position of `pair` in lexicographic (i, j) enumeration.
std::size_t pair_index(AnchorPair pair, std::size_t anchor_count);
AnchorPair pair_at(std::size_t index, std::size_t anchor_count);

/// Anchor-pair GDOP from the two ranges and the inter-anchor baseline:
///
///   sqrt(2 / (1 - c^2)),  c = (d_i^2 + d_j^2 - baseline^2) / (2 d_i d_j)
///
/// Returns kInfiniteGdop for non-positive ranges or when 1 - c^2 is within
/// kCollinearEpsilon of zero (or negative, which noisy ranges can produce).
double pair_gdop_from_ranges(double d_i, double d_j, double baseline) noexcept;

/// Same value for anchors at `p_i`, `p_j`. Throws Singular for a zero range
/// and InvalidArgument when the anchors coincide.
double pair_gdop(Point2D p_i, Point2D p_j, double d_i, double d_j);

/// sqrt(trace((H^T H)^-1)) where the rows of H are the unit bearings from
/// `p` to each anchor. Independent route to the same quantity as
/// pair_gdop(); infinite when det(H^T H) <= kCollinearEpsilon.
double pair_gdop_matrix(Point2D p, Point2D p_i, Point2D p_j);

/// Result of optimal anchor pair selection.
struct PairGdop {
    double value = kInfiniteGdop;
    AnchorPair pair;
    /// Every pair was infinite; `pair` is then the first pair.
    bool degenerate = false;
};

/// Minimum pair GDOP over all anchor pairs using the given ranges (true or
/// measured). Ties keep the lexicographically smallest pair. Pairs with a
/// non-positive range are never selected.
PairGdop multi_gdop(const AnchorSet& anchors, std::span<const double> distances);

/// Multi-anchor GDOP at `p` from true ranges. Throws Singular when `p`
/// coincides with an anchor.
PairGdop multi_gdop(const AnchorSet& anchors, Point2D p);

/// Raster of multi-anchor GDOP, row-major with x varying fastest.
struct LvtGrid {
    Region region;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<double> values;

    double at(std::size_t ix, std::size_t iy) const { return values[iy * nx + ix]; }
    Point2D node(std::size_t ix, std::size_t iy) const { return region.node(ix, iy, nx, ny); }
};

/// Grid includes the region boundary. Nodes on an anchor hold kInfiniteGdop.
LvtGrid lvt_grid(const AnchorSet& anchors, const Region& region, std::size_t nx, std::size_t ny);

enum class ScoreDomain { Region, Trajectory };

struct PlacementScore {
    double value = 0.0;
    ScoreDomain domain = ScoreDomain::Region;
    /// Trajectory samples dropped because they sat on an anchor, or region
    /// nodes that were shifted off an anchor.
    std::size_t adjusted = 0;
};

/// Average multi-anchor GDOP over `region` by the composite trapezium rule
/// on `subdivisions` x `subdivisions` sub-areas. A node that falls on an
/// anchor is evaluated half a grid step closer to the region centroid.
/// Throws Degenerate for three or more collinear anchors, or when a node has
/// unbounded GDOP.
PlacementScore region_score(const AnchorSet& anchors, const Region& region,
                            std::size_t subdivisions = 100);

/// Mean multi-anchor GDOP over trajectory samples. Samples on an anchor are
/// skipped and counted; throws Singular if nothing is left.
PlacementScore trajectory_score(const AnchorSet& anchors, std::span<const Point2D> samples);
PlacementScore trajectory_score(const AnchorSet& anchors, const Trajectory& trajectory);

/// Winning anchor pair for every grid node, stored as pair_index() values.
struct OsapMap {
    Region region;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::size_t anchor_count = 0;
    std::vector<std::uint32_t> pairs;

    AnchorPair at(std::size_t ix, std::size_t iy) const {
        return pair_at(pairs[iy * nx + ix], anchor_count);
    }
};

/// Optimal pair map. When `noise` is given, each node's ranges are perturbed
/// once before selection, drawing node by node in row-major order from
/// substream 0 of the model.
OsapMap osap_map(const AnchorSet& anchors, const Region& region, std::size_t nx, std::size_t ny,
                 const std::optional<NoiseModel>& noise = std::nullopt);

}  // namespace anchorlab
