#pragma once

#include <algorithm>
#include <span>

#include "anchorlab/gdop.hpp"

namespace anchorlab::detail {

/// 1 - c^2 for the triangle with sides d_i, d_j and baseline, evaluated as
/// 16 area^2 / (4 d_i^2 d_j^2) with Kahan's ordering of Heron's product so
/// near-collinear triangles keep full relative precision. Negative when the
/// sides cannot close.
inline double sine_squared(double d_i, double d_j, double baseline) {
    double a = d_i, b = d_j, c = baseline;
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    const double heron = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    return heron / (4.0 * d_i * d_i * d_j * d_j);
}

/// Pair selection behind multi_gdop(). `best_s2` receives 1 - c^2 of the
/// winner, or kCollinearEpsilon when every pair is degenerate.
AnchorPair best_pair(const AnchorSet& anchors, std::span<const double> distances, double* best_s2);

}  // namespace anchorlab::detail
