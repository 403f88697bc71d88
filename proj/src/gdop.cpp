#include "anchorlab/gdop.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "anchorlab/error.hpp"
#include "gdop_core.hpp"

namespace anchorlab {

namespace {

void require_grid(std::size_t nx, std::size_t ny) {
    if (nx < 2 || ny < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2x2 nodes");
}

bool on_anchor(const AnchorSet& anchors, Point2D p) {
    for (const auto& a : anchors.anchors()) {
        if (a.position == p) return true;
    }
    return false;
}

// Shift toward the centroid by `step`; +x when the point is the centroid.
Point2D nudge_toward(Point2D p, Point2D target, double step) {
    const Point2D dir = target - p;
    const double len = std::hypot(dir.x, dir.y);
    if (len == 0.0) return {p.x + step, p.y};
    return p + (step / len) * dir;
}

}  // namespace

std::size_t pair_count(std::size_t anchor_count) { return anchor_count * (anchor_count - 1) / 2; }

std::size_t pair_index(AnchorPair pair, std::size_t m) {
    // Pairs before row i: sum_{r<i} (m-1-r).
    const std::size_t i = pair.first;
    return i * (2 * m - i - 1) / 2 + (pair.second - i - 1);
}

AnchorPair pair_at(std::size_t index, std::size_t m) {
    std::size_t i = 0;
    while (index >= m - 1 - i) {
        index -= m - 1 - i;
        ++i;
    }
    return {i, i + 1 + index};
}

double pair_gdop_from_ranges(double d_i, double d_j, double baseline) noexcept {
    if (!(d_i > 0.0) || !(d_j > 0.0)) return kInfiniteGdop;
    const double s2 = detail::sine_squared(d_i, d_j, baseline);
    if (!(s2 > kCollinearEpsilon)) return kInfiniteGdop;
    return std::sqrt(2.0 / s2);
}

double pair_gdop(Point2D p_i, Point2D p_j, double d_i, double d_j) {
    if (p_i == p_j) throw Error(ErrorCode::InvalidArgument, "anchor pair shares one position");
    if (!(d_i > 0.0) || !(d_j > 0.0)) {
        throw Error(ErrorCode::Singular, "zero range: mobile node coincides with an anchor");
    }
    return pair_gdop_from_ranges(d_i, d_j, distance(p_i, p_j));
}

double pair_gdop_matrix(Point2D p, Point2D p_i, Point2D p_j) {
    const double r_i = distance(p, p_i);
    const double r_j = distance(p, p_j);
    if (r_i == 0.0 || r_j == 0.0) {
        throw Error(ErrorCode::Singular, "evaluation point coincides with an anchor");
    }
    // Rows of H: unit bearings from p to each anchor.
    const double h00 = (p.x - p_i.x) / r_i, h01 = (p.y - p_i.y) / r_i;
    const double h10 = (p.x - p_j.x) / r_j, h11 = (p.y - p_j.y) / r_j;
    // N = H^T H; det(N) = det(H)^2 and trace(N^-1) = trace(N) / det(N).
    const double det_h = h00 * h11 - h01 * h10;
    const double det = det_h * det_h;
    if (!(det > kCollinearEpsilon)) return kInfiniteGdop;
    const double trace = h00 * h00 + h10 * h10 + h01 * h01 + h11 * h11;
    return std::sqrt(trace / det);
}

namespace detail {

AnchorPair best_pair(const AnchorSet& anchors, std::span<const double> distances, double* best_s2) {
    // Minimizing sqrt(2 / s2) is maximizing s2 = 1 - c^2.
    const std::size_t m = anchors.size();
    AnchorPair pair;
    double best = kCollinearEpsilon;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double d_i = distances[i];
        if (!(d_i > 0.0)) continue;
        for (std::size_t j = i + 1; j < m; ++j) {
            const double d_j = distances[j];
            if (!(d_j > 0.0)) continue;
            const double s2 = sine_squared(d_i, d_j, anchors.baseline(i, j));
            if (s2 > best) {
                best = s2;
                pair = {i, j};
            }
        }
    }
    if (best_s2) *best_s2 = best;
    return pair;
}

}  // namespace detail

PairGdop multi_gdop(const AnchorSet& anchors, std::span<const double> distances) {
    const std::size_t m = anchors.size();
    if (distances.size() != m) {
        throw Error(ErrorCode::Mismatch, "expected " + std::to_string(m) + " distances, got " +
                                             std::to_string(distances.size()));
    }
    PairGdop best;
    double s2 = 0.0;
    best.pair = detail::best_pair(anchors, distances, &s2);
    best.degenerate = !(s2 > kCollinearEpsilon);
    best.value = best.degenerate ? kInfiniteGdop : std::sqrt(2.0 / s2);
    return best;
}

PairGdop multi_gdop(const AnchorSet& anchors, Point2D p) {
    const auto d = anchors.distances_from(p);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0.0) {
            throw Error(ErrorCode::Singular,
                        "evaluation point coincides with anchor " + std::to_string(anchors[i].id));
        }
    }
    return multi_gdop(anchors, std::span<const double>(d));
}

LvtGrid lvt_grid(const AnchorSet& anchors, const Region& region, std::size_t nx, std::size_t ny) {
    require_grid(nx, ny);
    LvtGrid grid{region, nx, ny, std::vector<double>(nx * ny, kInfiniteGdop)};
    std::vector<double> d(anchors.size());
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const Point2D p = region.node(ix, iy, nx, ny);
            if (on_anchor(anchors, p)) continue;
            anchors.distances_from(p, d);
            grid.values[iy * nx + ix] = multi_gdop(anchors, std::span<const double>(d)).value;
        }
    }
    return grid;
}

PlacementScore region_score(const AnchorSet& anchors, const Region& region, std::size_t subdivisions) {
    if (subdivisions < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sub-area");
    if (anchors.size() >= 3 && anchors.all_collinear()) {
        throw Error(ErrorCode::Degenerate, "all anchors are collinear; placement score is unbounded");
    }
    const std::size_t n = subdivisions + 1;
    const double step = 0.5 * std::min(region.width(), region.height()) / static_cast<double>(subdivisions);
    const Point2D centroid = region.centroid();

    PlacementScore score{0.0, ScoreDomain::Region, 0};
    std::vector<double> d(anchors.size());
    double weighted = 0.0;
    double weight_total = 0.0;
    for (std::size_t iy = 0; iy < n; ++iy) {
        const double wy = (iy == 0 || iy + 1 == n) ? 0.5 : 1.0;
        double row = 0.0;
        double row_weight = 0.0;
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double wx = (ix == 0 || ix + 1 == n) ? 0.5 : 1.0;
            Point2D p = region.node(ix, iy, n, n);
            if (on_anchor(anchors, p)) {
                p = nudge_toward(p, centroid, step);
                ++score.adjusted;
            }
            anchors.distances_from(p, d);
            const double g = multi_gdop(anchors, std::span<const double>(d)).value;
            if (g == kInfiniteGdop) {
                throw Error(ErrorCode::Degenerate, "unbounded GDOP inside the region");
            }
            row += wx * g;
            row_weight += wx;
        }
        weighted += wy * row;
        weight_total += wy * row_weight;
    }
    score.value = weighted / weight_total;
    return score;
}

PlacementScore trajectory_score(const AnchorSet& anchors, std::span<const Point2D> samples) {
    PlacementScore score{0.0, ScoreDomain::Trajectory, 0};
    std::vector<double> d(anchors.size());
    double sum = 0.0;
    std::size_t used = 0;
    bool unbounded = false;
    for (const auto& p : samples) {
        if (on_anchor(anchors, p)) {
            ++score.adjusted;
            continue;
        }
        anchors.distances_from(p, d);
        const double g = multi_gdop(anchors, std::span<const double>(d)).value;
        unbounded = unbounded || g == kInfiniteGdop;
        sum += g;
        ++used;
    }
    if (used == 0) throw Error(ErrorCode::Singular, "every trajectory sample sits on an anchor");
    if (unbounded) throw Error(ErrorCode::Degenerate, "unbounded GDOP on the trajectory");
    score.value = sum / static_cast<double>(used);
    return score;
}

PlacementScore trajectory_score(const AnchorSet& anchors, const Trajectory& trajectory) {
    return trajectory_score(anchors, std::span<const Point2D>(trajectory.points()));
}

OsapMap osap_map(const AnchorSet& anchors, const Region& region, std::size_t nx, std::size_t ny,
                 const std::optional<NoiseModel>& noise) {
    require_grid(nx, ny);
    OsapMap map{region, nx, ny, anchors.size(), std::vector<std::uint32_t>(nx * ny, 0)};
    std::optional<NoiseStream> stream;
    if (noise) stream.emplace(*noise, 0);

    const std::size_t m = anchors.size();
    std::vector<double> d(m);
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            anchors.distances_from(region.node(ix, iy, nx, ny), d);
            if (stream) {
                for (auto& di : d) di = std::max(0.0, di + stream->next());
            }
            const auto best = multi_gdop(anchors, std::span<const double>(d));
            map.pairs[iy * nx + ix] = static_cast<std::uint32_t>(pair_index(best.pair, m));
        }
    }
    return map;
}

}  // namespace anchorlab
