#include "anchorlab/geometry.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "anchorlab/error.hpp"

namespace anchorlab {

namespace {

void require_finite(Point2D p, const char* what) {
    if (!is_finite(p)) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " has a non-finite coordinate");
    }
}

double cross(Point2D a, Point2D b) { return a.x * b.y - a.y * b.x; }

}  // namespace

AnchorSet::AnchorSet(std::vector<Anchor> anchors) : anchors_(std::move(anchors)) {
    if (anchors_.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "an anchor set needs at least two anchors");
    }
    std::set<int> ids;
    for (const auto& a : anchors_) {
        require_finite(a.position, "anchor position");
        if (!ids.insert(a.id).second) {
            throw Error(ErrorCode::InvalidArgument, "duplicate anchor id " + std::to_string(a.id));
        }
    }
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
        for (std::size_t j = i + 1; j < anchors_.size(); ++j) {
            if (anchors_[i].position == anchors_[j].position) {
                throw Error(ErrorCode::InvalidArgument,
                            "anchors " + std::to_string(anchors_[i].id) + " and " +
                                std::to_string(anchors_[j].id) + " share a position");
            }
        }
    }
    const std::size_t m = anchors_.size();
    baselines_.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) baselines_[i * m + j] = distance(anchors_[i].position, anchors_[j].position);
    }
}

AnchorSet AnchorSet::from_points(std::span<const Point2D> points) {
    std::vector<Anchor> anchors;
    anchors.reserve(points.size());
    int id = 1;
    for (const auto& p : points) anchors.push_back({id++, p});
    return AnchorSet(std::move(anchors));
}

std::vector<Point2D> AnchorSet::positions() const {
    std::vector<Point2D> out;
    out.reserve(anchors_.size());
    for (const auto& a : anchors_) out.push_back(a.position);
    return out;
}

std::vector<double> AnchorSet::distances_from(Point2D p) const {
    std::vector<double> out(anchors_.size());
    distances_from(p, out);
    return out;
}

void AnchorSet::distances_from(Point2D p, std::span<double> out) const {
    for (std::size_t i = 0; i < anchors_.size(); ++i) out[i] = distance(p, anchors_[i].position);
}

bool AnchorSet::all_collinear() const {
    const Point2D origin = anchors_.front().position;
    std::size_t far = 1;
    double far_dist = 0.0;
    for (std::size_t i = 1; i < anchors_.size(); ++i) {
        const double d = distance(origin, anchors_[i].position);
        if (d > far_dist) {
            far_dist = d;
            far = i;
        }
    }
    const Point2D axis = anchors_[far].position - origin;
    for (const auto& a : anchors_) {
        if (std::abs(cross(axis, a.position - origin)) > 1e-10 * far_dist * far_dist) return false;
    }
    return true;
}

AnchorSet AnchorSet::translated(Point2D offset) const {
    auto moved = anchors_;
    for (auto& a : moved) a.position = a.position + offset;
    return AnchorSet(std::move(moved));
}

Region::Region(Point2D min_corner, Point2D max_corner) : min_(min_corner), max_(max_corner) {
    require_finite(min_, "region corner");
    require_finite(max_, "region corner");
    if (!(max_.x > min_.x && max_.y > min_.y)) {
        throw Error(ErrorCode::InvalidArgument, "region max corner must exceed min corner");
    }
}

bool Region::contains(Point2D p, double tolerance) const {
    return p.x >= min_.x - tolerance && p.x <= max_.x + tolerance && p.y >= min_.y - tolerance &&
           p.y <= max_.y + tolerance;
}

Point2D Region::node(std::size_t ix, std::size_t iy, std::size_t nx, std::size_t ny) const {
    // Last node is pinned to the max corner so boundaries stay exact.
    const double x = ix + 1 == nx ? max_.x : min_.x + width() * static_cast<double>(ix) / (nx - 1);
    const double y = iy + 1 == ny ? max_.y : min_.y + height() * static_cast<double>(iy) / (ny - 1);
    return {x, y};
}

Trajectory::Trajectory(std::vector<Point2D> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "a trajectory needs at least two points");
    }
    for (const auto& p : points_) require_finite(p, "trajectory point");
    if (!(arc_length(points_) > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "trajectory has zero length");
    }
}

Trajectory Trajectory::reversed() const {
    std::vector<Point2D> r(points_.rbegin(), points_.rend());
    return Trajectory(std::move(r));
}

double arc_length(std::span<const Point2D> points) {
    double total = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) total += distance(points[i - 1], points[i]);
    return total;
}

double arc_length(const Trajectory& t) { return arc_length(t.points()); }

Trajectory resample_by_arc_length(std::span<const Point2D> points, std::size_t count) {
    if (count < 2) throw Error(ErrorCode::InvalidArgument, "resample count must be at least 2");
    if (points.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two points to resample");

    std::vector<double> cumulative(points.size(), 0.0);
    for (std::size_t i = 1; i < points.size(); ++i) {
        cumulative[i] = cumulative[i - 1] + distance(points[i - 1], points[i]);
    }
    const double total = cumulative.back();
    if (!(total > 0.0)) throw Error(ErrorCode::InvalidArgument, "cannot resample a zero-length polyline");

    std::vector<Point2D> out;
    out.reserve(count);
    out.push_back(points.front());
    std::size_t seg = 1;
    for (std::size_t k = 1; k + 1 < count; ++k) {
        const double target = total * static_cast<double>(k) / static_cast<double>(count - 1);
        while (seg + 1 < points.size() && cumulative[seg] < target) ++seg;
        const double seg_len = cumulative[seg] - cumulative[seg - 1];
        const double t = seg_len > 0.0 ? (target - cumulative[seg - 1]) / seg_len : 0.0;
        const Point2D a = points[seg - 1];
        const Point2D b = points[seg];
        out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
    out.push_back(points.back());
    return Trajectory(std::move(out));
}

std::vector<Point2D> hilbert_vertices(int order, const Region& region) {
    if (order < 1) throw Error(ErrorCode::InvalidArgument, "Hilbert order must be positive");
    if (order > 15) throw Error(ErrorCode::InvalidArgument, "Hilbert order too large");

    const std::size_t side = std::size_t{1} << order;
    const std::size_t cells = side * side;
    const double cell_w = region.width() / static_cast<double>(side);
    const double cell_h = region.height() / static_cast<double>(side);

    std::vector<Point2D> out;
    out.reserve(cells);
    for (std::size_t d = 0; d < cells; ++d) {
        // Index-to-cell walk of the canonical curve, which runs from the
        // lower-left cell to the lower-right one.
        std::size_t x = 0, y = 0, t = d;
        for (std::size_t s = 1; s < side; s *= 2) {
            const std::size_t rx = 1 & (t / 2);
            const std::size_t ry = 1 & (t ^ rx);
            if (ry == 0) {
                if (rx == 1) {
                    x = s - 1 - x;
                    y = s - 1 - y;
                }
                std::swap(x, y);
            }
            x += s * rx;
            y += s * ry;
            t /= 4;
        }
        // Mirror vertically so the walk begins at the upper-left cell.
        out.push_back({region.min().x + (static_cast<double>(x) + 0.5) * cell_w,
                       region.max().y - (static_cast<double>(y) + 0.5) * cell_h});
    }
    return out;
}

Trajectory hilbert_trajectory(int order, const Region& region, std::size_t resample_to) {
    const auto vertices = hilbert_vertices(order, region);
    return resample_by_arc_length(vertices, resample_to);
}

}  // namespace anchorlab
