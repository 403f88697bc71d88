#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string_view>

#include "anchorlab/gdop.hpp"
#include "anchorlab/geometry.hpp"

namespace anchorlab {

enum class Method { Lsm, Gdm, Tplm };

const char* to_string(Method method) noexcept;
Method parse_method(std::string_view text);

enum class EstimateStatus {
    Converged,
    /// Gradient descent used every iteration without meeting the tolerance.
    IterationLimit,
    /// Gradient descent increased the objective or left the finite range.
    Diverged,
};

struct Estimate {
    Point2D position;
    Method method = Method::Lsm;
    EstimateStatus status = EstimateStatus::Converged;
    int iterations = 0;
    /// Pair used by the two-phase method.
    std::optional<AnchorPair> pair;
    /// The two range circles did not intersect and the pair axis point was used.
    bool radicand_clamped = false;
    std::chrono::nanoseconds elapsed{0};

    bool ok() const { return status != EstimateStatus::Diverged; }
};

struct LsmConfig {
    /// det(A^T A) below tolerance * trace(A^T A)^2 is treated as rank deficient.
    double tolerance = 1e-12;
};

struct GdmConfig {
    double step = 1e-5;
    double tolerance = 1e-3;  // meters between successive iterates
    int max_iterations = 100;

    void validate() const;
};

/// Linearized least squares: anchor 1 is subtracted from every other range
/// equation and the 2x2 normal equations are solved. Needs m >= 3 and a
/// non-collinear placement; throws Singular otherwise.
Estimate lsm_solve(const AnchorSet& anchors, std::span<const double> measured,
                   const LsmConfig& config = {});

/// f(p) = sum_i (|p - p_i|^2 - d_i^2)^2
double range_objective(const AnchorSet& anchors, std::span<const double> measured, Point2D p);

/// Exact gradient of range_objective:
/// df/dx = sum_i 4 (x - x_i) (|p - p_i|^2 - d_i^2), likewise for y.
Point2D range_objective_gradient(const AnchorSet& anchors, std::span<const double> measured, Point2D p);

/// Fixed-step gradient descent on range_objective starting from `init`.
///
/// Each step moves by step * grad(f)/2, i.e. the gradient of the halved
/// objective. Iteration stops once successive iterates are closer than the
/// tolerance. A step that raises the objective or produces a non-finite
/// value ends the run with status Diverged and the last accepted iterate.
Estimate gdm_solve(const AnchorSet& anchors, std::span<const double> measured, Point2D init,
                   const GdmConfig& config = {});

/// Both intersections of the circles |p - p_i| = d_i and |p - p_j| = d_j.
/// `upper` lies to the left of the directed axis p_i -> p_j.
struct CircleCandidates {
    Point2D upper;
    Point2D lower;
    bool clamped = false;
};

CircleCandidates circle_candidates(Point2D p_i, Point2D p_j, double d_i, double d_j);

/// Two-phase localization. Phase one picks the anchor pair with the lowest
/// pair GDOP evaluated from the measured ranges; phase two intersects that
/// pair's range circles and keeps the candidate nearest to `reference`
/// (the upper candidate on a tie).
Estimate tplm_solve(const AnchorSet& anchors, std::span<const double> measured, Point2D reference);

}  // namespace anchorlab
