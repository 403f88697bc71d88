#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace anchorlab {

/// Planar position in meters.
struct Point2D {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2D operator*(double s, Point2D p) { return {s * p.x, s * p.y}; }
    friend constexpr bool operator==(Point2D, Point2D) = default;
};

inline bool is_finite(Point2D p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Euclidean distance.
inline double distance(Point2D a, Point2D b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

struct Anchor {
    int id = 0;
    Point2D position;
};

/// Ordered set of at least two anchors with unique ids and distinct positions.
class AnchorSet {
public:
    explicit AnchorSet(std::vector<Anchor> anchors);

    /// Assigns ids 1..m in order.
    static AnchorSet from_points(std::span<const Point2D> points);

    std::size_t size() const { return anchors_.size(); }
    const Anchor& operator[](std::size_t i) const { return anchors_[i]; }
    Point2D position(std::size_t i) const { return anchors_[i].position; }
    const std::vector<Anchor>& anchors() const { return anchors_; }
    std::vector<Point2D> positions() const;

    /// True distances from `p` to every anchor, in set order.
    std::vector<double> distances_from(Point2D p) const;
    void distances_from(Point2D p, std::span<double> out) const;

    /// Distance between anchors i and j.
    double baseline(std::size_t i, std::size_t j) const { return baselines_[i * anchors_.size() + j]; }

    /// True when every anchor lies on one line (relative tolerance).
    bool all_collinear() const;

    AnchorSet translated(Point2D offset) const;

private:
    std::vector<Anchor> anchors_;
    std::vector<double> baselines_;
};

/// Axis-aligned rectangle with max > min componentwise.
class Region {
public:
    Region(Point2D min_corner, Point2D max_corner);

    Point2D min() const { return min_; }
    Point2D max() const { return max_; }
    double width() const { return max_.x - min_.x; }
    double height() const { return max_.y - min_.y; }
    double area() const { return width() * height(); }
    Point2D centroid() const { return {0.5 * (min_.x + max_.x), 0.5 * (min_.y + max_.y)}; }
    bool contains(Point2D p, double tolerance = 0.0) const;

    /// Node (ix, iy) of an nx-by-ny lattice that includes the boundary.
    Point2D node(std::size_t ix, std::size_t iy, std::size_t nx, std::size_t ny) const;

    friend bool operator==(const Region&, const Region&) = default;

private:
    Point2D min_;
    Point2D max_;
};

/// Ordered points joined piecewise-linearly. At least two points and positive length.
class Trajectory {
public:
    explicit Trajectory(std::vector<Point2D> points);

    const std::vector<Point2D>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const Point2D& operator[](std::size_t i) const { return points_[i]; }

    Trajectory reversed() const;

private:
    std::vector<Point2D> points_;
};

double arc_length(const Trajectory& t);
double arc_length(std::span<const Point2D> points);

/// Resamples a polyline to `count` points spaced uniformly by arc length.
/// Both endpoints are preserved.
Trajectory resample_by_arc_length(std::span<const Point2D> points, std::size_t count);

/// Cell centers of the order-k Hilbert curve over `region`, 4^k vertices.
/// The curve starts in the upper-left cell and ends in the upper-right one.
std::vector<Point2D> hilbert_vertices(int order, const Region& region);

/// Order-k Hilbert curve resampled uniformly by arc length to `resample_to` points.
Trajectory hilbert_trajectory(int order, const Region& region, std::size_t resample_to);

}  // namespace anchorlab
