#include "anchorlab/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "anchorlab/error.hpp"

namespace anchorlab {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t substream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(substream),
                      static_cast<std::uint32_t>(substream >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t substream)
    : engine_(seeded_engine(seed, substream)) {}

double RandomStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
    if (spare_normal_) {
        const double z = *spare_normal_;
        spare_normal_.reset();
        return z;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(angle);
    return r * std::cos(angle);
}

double NoiseModel::uniform_half_width() const { return level * std::numbers::sqrt3; }

void NoiseModel::validate() const {
    if (!(level >= 0.0) || !std::isfinite(level)) {
        throw Error(ErrorCode::InvalidArgument, "noise level must be finite and non-negative");
    }
}

const char* to_string(NoiseKind kind) noexcept {
    return kind == NoiseKind::Gaussian ? "gaussian" : "uniform";
}

NoiseKind parse_noise_kind(std::string_view text) {
    if (text == "gaussian" || text == "normal") return NoiseKind::Gaussian;
    if (text == "uniform") return NoiseKind::Uniform;
    throw Error(ErrorCode::InvalidArgument, "unknown noise model '" + std::string(text) + "'");
}

NoiseStream::NoiseStream(const NoiseModel& model, std::uint64_t substream)
    : model_(model), random_(model.seed, substream) {
    model_.validate();
}

double NoiseStream::next() {
    if (model_.kind == NoiseKind::Gaussian) return model_.level * random_.normal();
    const double a = model_.uniform_half_width();
    return a * (2.0 * random_.uniform01() - 1.0);
}

void NoiseStream::fill(std::span<double> out) {
    for (auto& v : out) v = next();
}

std::vector<double> draw_noise(const NoiseModel& model, std::size_t count, std::uint64_t substream) {
    NoiseStream stream(model, substream);
    std::vector<double> out(count);
    stream.fill(out);
    return out;
}

RangeSample measure(const AnchorSet& anchors, Point2D p, NoiseStream& noise, std::size_t epoch) {
    RangeSample sample;
    sample.epoch = epoch;
    sample.truth = p;
    sample.distances = anchors.distances_from(p);
    for (std::size_t i = 0; i < sample.distances.size(); ++i) {
        if (sample.distances[i] == 0.0) {
            throw Error(ErrorCode::Singular,
                        "measurement point coincides with anchor " + std::to_string(anchors[i].id));
        }
    }
    for (auto& d : sample.distances) d = std::max(0.0, d + noise.next());
    return sample;
}

RangeSample measure(const AnchorSet& anchors, Point2D p, const NoiseModel& model) {
    NoiseStream stream(model, 0);
    return measure(anchors, p, stream);
}

}  // namespace anchorlab
