#include "anchorlab/localizers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "anchorlab/error.hpp"
#include "gdop_core.hpp"
#include "localizers_core.hpp"

namespace anchorlab {

namespace {

using Clock = std::chrono::steady_clock;

void require_ranges(const AnchorSet& anchors, std::span<const double> measured) {
    if (measured.size() != anchors.size()) {
        throw Error(ErrorCode::Mismatch, "expected " + std::to_string(anchors.size()) +
                                             " ranges, got " + std::to_string(measured.size()));
    }
}

}  // namespace

const char* to_string(Method method) noexcept {
    switch (method) {
        case Method::Lsm: return "lsm";
        case Method::Gdm: return "gdm";
        case Method::Tplm: return "tplm";
    }
    return "?";
}

Method parse_method(std::string_view text) {
    if (text == "lsm") return Method::Lsm;
    if (text == "gdm") return Method::Gdm;
    if (text == "tplm") return Method::Tplm;
    throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(text) + "'");
}

void GdmConfig::validate() const {
    if (!(step > 0.0) || !(tolerance > 0.0) || max_iterations < 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "gradient descent needs step > 0, tolerance > 0 and at least one iteration");
    }
}

namespace detail {

Estimate lsm_core(const AnchorSet& anchors, std::span<const double> measured, const LsmConfig& config) {
    require_ranges(anchors, measured);
    const std::size_t m = anchors.size();
    if (m < 3) throw Error(ErrorCode::InvalidArgument, "least squares needs at least three anchors");

    const Point2D p1 = anchors.position(0);
    const double r1_sq = p1.x * p1.x + p1.y * p1.y;
    const double d1_sq = measured[0] * measured[0];

    // Accumulate A^T A and A^T M row by row.
    double n00 = 0.0, n01 = 0.0, n11 = 0.0, b0 = 0.0, b1 = 0.0;
    for (std::size_t k = 1; k < m; ++k) {
        const Point2D pk = anchors.position(k);
        const double ax = 2.0 * (pk.x - p1.x);
        const double ay = 2.0 * (pk.y - p1.y);
        const double rhs = d1_sq - measured[k] * measured[k] + (pk.x * pk.x + pk.y * pk.y) - r1_sq;
        n00 += ax * ax;
        n01 += ax * ay;
        n11 += ay * ay;
        b0 += ax * rhs;
        b1 += ay * rhs;
    }
    const double det = n00 * n11 - n01 * n01;
    const double trace = n00 + n11;
    if (!(std::abs(det) > config.tolerance * trace * trace)) {
        throw Error(ErrorCode::Singular, "anchors are collinear; least-squares system is rank deficient");
    }

    Estimate est;
    est.method = Method::Lsm;
    est.position = {(n11 * b0 - n01 * b1) / det, (n00 * b1 - n01 * b0) / det};
    return est;
}

}  // namespace detail

double range_objective(const AnchorSet& anchors, std::span<const double> measured, Point2D p) {
    double f = 0.0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        const Point2D q = p - anchors.position(i);
        const double r = q.x * q.x + q.y * q.y - measured[i] * measured[i];
        f += r * r;
    }
    return f;
}

Point2D range_objective_gradient(const AnchorSet& anchors, std::span<const double> measured, Point2D p) {
    Point2D g;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        const Point2D q = p - anchors.position(i);
        const double r = q.x * q.x + q.y * q.y - measured[i] * measured[i];
        g.x += 4.0 * q.x * r;
        g.y += 4.0 * q.y * r;
    }
    return g;
}

namespace detail {

Estimate gdm_core(const AnchorSet& anchors, std::span<const double> measured, Point2D init,
                  const GdmConfig& config) {
    require_ranges(anchors, measured);
    config.validate();
    if (!is_finite(init)) throw Error(ErrorCode::InvalidArgument, "initial point is not finite");

    Estimate est;
    est.method = Method::Gdm;
    est.status = EstimateStatus::IterationLimit;
    est.iterations = config.max_iterations;

    const double scale = 0.5 * config.step;
    Point2D p = init;
    double fp = range_objective(anchors, measured, p);
    for (int k = 1; k <= config.max_iterations; ++k) {
        const Point2D next = p - scale * range_objective_gradient(anchors, measured, p);
        const double fn = is_finite(next) ? range_objective(anchors, measured, next)
                                            : std::numeric_limits<double>::infinity();
        if (!std::isfinite(fn)) {
            est.status = EstimateStatus::Diverged;
            est.iterations = k;
            break;
        }
        const double moved = distance(next, p);
        if (moved < config.tolerance) {
            // Below the tolerance an uphill step is rounding noise at the minimum.
            if (fn <= fp) p = next;
            est.status = EstimateStatus::Converged;
            est.iterations = k;
            break;
        }
        if (!(fn <= fp)) {
            est.status = EstimateStatus::Diverged;
            est.iterations = k;
            break;
        }
        p = next;
        fp = fn;
    }
    est.position = p;
    return est;
}

}  // namespace detail

namespace {

CircleCandidates intersect(Point2D p_i, Point2D p_j, double baseline, double d_i, double d_j) {
    // Rotation by the full-quadrant bearing of p_j - p_i.
    const double cos_t = (p_j.x - p_i.x) / baseline;
    const double sin_t = (p_j.y - p_i.y) / baseline;
    const double u = (baseline * baseline + d_i * d_i - d_j * d_j) / (2.0 * baseline);
    const double radicand = d_i * d_i - u * u;

    CircleCandidates out;
    out.clamped = radicand < 0.0;
    const double v = out.clamped ? 0.0 : std::sqrt(radicand);
    out.upper = {p_i.x + cos_t * u - sin_t * v, p_i.y + sin_t * u + cos_t * v};
    out.lower = {p_i.x + cos_t * u + sin_t * v, p_i.y + sin_t * u - cos_t * v};
    return out;
}

double squared_distance(Point2D a, Point2D b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

}  // namespace

CircleCandidates circle_candidates(Point2D p_i, Point2D p_j, double d_i, double d_j) {
    const double baseline = distance(p_i, p_j);
    if (baseline == 0.0) throw Error(ErrorCode::InvalidArgument, "anchor pair shares one position");
    return intersect(p_i, p_j, baseline, d_i, d_j);
}

namespace detail {

Estimate tplm_core(const AnchorSet& anchors, std::span<const double> measured, Point2D reference) {
    require_ranges(anchors, measured);

    const AnchorPair pair = anchors.size() == 2 ? AnchorPair{0, 1} : detail::best_pair(anchors, measured, nullptr);
    const auto candidates = intersect(anchors.position(pair.first), anchors.position(pair.second),
                                      anchors.baseline(pair.first, pair.second), measured[pair.first],
                                      measured[pair.second]);

    Estimate est;
    est.method = Method::Tplm;
    est.pair = pair;
    est.radicand_clamped = candidates.clamped;
    est.position = squared_distance(candidates.upper, reference) <= squared_distance(candidates.lower, reference)
                       ? candidates.upper
                       : candidates.lower;
    return est;
}

}  // namespace detail

Estimate lsm_solve(const AnchorSet& anchors, std::span<const double> measured, const LsmConfig& config) {
    const auto start = Clock::now();
    Estimate est = detail::lsm_core(anchors, measured, config);
    est.elapsed = Clock::now() - start;
    return est;
}

Estimate gdm_solve(const AnchorSet& anchors, std::span<const double> measured, Point2D init,
                   const GdmConfig& config) {
    const auto start = Clock::now();
    Estimate est = detail::gdm_core(anchors, measured, init, config);
    est.elapsed = Clock::now() - start;
    return est;
}

Estimate tplm_solve(const AnchorSet& anchors, std::span<const double> measured, Point2D reference) {
    const auto start = Clock::now();
    Estimate est = detail::tplm_core(anchors, measured, reference);
    est.elapsed = Clock::now() - start;
    return est;
}

}  // namespace anchorlab
