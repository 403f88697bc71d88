#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "anchorlab/geometry.hpp"

namespace anchorlab {

/// Reproducible random source for one (seed, substream) pair.
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the four
/// 32-bit halves of seed and substream; both are fully specified by the C++
/// standard, so the raw stream is identical on every conforming platform.
/// Uniform variates take the top 53 bits of one engine output. Normal
/// variates use the Box-Muller transform and consume engine outputs in pairs.
/// The standard distribution classes are avoided because their algorithms
/// are implementation-defined.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t substream);

    /// Uniform on [0, 1).
    double uniform01();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Standard normal.
    double normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

enum class NoiseKind { Gaussian, Uniform };

/// Zero-mean ranging noise. `level` is the standard deviation for both
/// kinds: Gaussian draws N(0, level^2) and uniform draws U(-a, a) with
/// a = level * sqrt(3).
struct NoiseModel {
    NoiseKind kind = NoiseKind::Gaussian;
    double level = 0.0;
    std::uint64_t seed = 0;

    double uniform_half_width() const;
    void validate() const;
};

const char* to_string(NoiseKind kind) noexcept;
NoiseKind parse_noise_kind(std::string_view text);

/// Stream of offsets drawn from a NoiseModel. Distinct substreams of one
/// model never share draws.
class NoiseStream {
public:
    NoiseStream(const NoiseModel& model, std::uint64_t substream);

    double next();
    void fill(std::span<double> out);

    const NoiseModel& model() const { return model_; }

private:
    NoiseModel model_;
    RandomStream random_;
};

std::vector<double> draw_noise(const NoiseModel& model, std::size_t count,
                               std::uint64_t substream = 0);

/// One epoch of measured distances from the mobile node to every anchor.
struct RangeSample {
    std::size_t epoch = 0;
    std::vector<double> distances;
    std::optional<Point2D> truth;
};

/// Measures distances from `p` with one fresh offset per anchor.
/// Measured distances are clamped at zero.
RangeSample measure(const AnchorSet& anchors, Point2D p, NoiseStream& noise, std::size_t epoch = 0);
RangeSample measure(const AnchorSet& anchors, Point2D p, const NoiseModel& model);

}  // namespace anchorlab
