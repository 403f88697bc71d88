#include "anchorlab/experiments.hpp"

#include <chrono>
#include <string>

#include "anchorlab/error.hpp"
#include "anchorlab/gdop.hpp"
#include "localizers_core.hpp"

namespace anchorlab {

namespace placements {
AnchorSet ap1() {
    const Point2D p[] = {{0, 100}, {0, 0}, {100, 0}};
    return AnchorSet::from_points(p);
}
AnchorSet ap2() {
    const Point2D p[] = {{0, 100}, {7, 50}, {3, 40}};
    return AnchorSet::from_points(p);
}
AnchorSet ap3() {
    const Point2D p[] = {{0, 100}, {0, 0}, {100, 0}, {1, 98}};
    return AnchorSet::from_points(p);
}
AnchorSet ap4() {
    const Point2D p[] = {{0, 100}, {7, 50}, {3, 40}, {1, 98}};
    return AnchorSet::from_points(p);
}
}  // namespace placements

Region traversal_area() { return Region({0.0, 0.0}, {100.0, 100.0}); }

Trajectory standard_hilbert_trajectory() { return hilbert_trajectory(6, traversal_area(), 8190); }

const MethodStats& TraversalResult::stats_for(Method method) const {
    for (const auto& s : stats) {
        if (s.method == method) return s;
    }
    throw Error(ErrorCode::InvalidArgument, std::string("method not run: ") + to_string(method));
}

namespace {

struct PointOutcome {
    Point2D position;
    bool ok = true;
    int iterations = 0;
};

PointOutcome estimate(Method method, const AnchorSet& anchors, std::span<const double> ranges,
                      const GdmConfig& gdm) {
    const Point2D reference = detail::lsm_core(anchors, ranges).position;
    switch (method) {
        case Method::Lsm: return {reference, true, 0};
        case Method::Gdm: {
            const auto est = detail::gdm_core(anchors, ranges, reference, gdm);
            return {est.position, est.ok(), est.iterations};
        }
        case Method::Tplm: return {detail::tplm_core(anchors, ranges, reference).position, true, 0};
    }
    return {};
}

void validate(const ExperimentSpec& spec) {
    if (spec.repetitions < 1) throw Error(ErrorCode::InvalidArgument, "need at least one repetition");
    if (spec.trajectory.empty()) throw Error(ErrorCode::InvalidArgument, "trajectory is empty");
    if (spec.methods.empty()) throw Error(ErrorCode::InvalidArgument, "no methods requested");
    if (spec.anchors.size() < 3) {
        throw Error(ErrorCode::InvalidArgument, "benchmarks need at least three anchors");
    }
    if (spec.anchors.all_collinear()) throw Error(ErrorCode::Degenerate, "anchors are collinear");
    spec.noise.validate();
    spec.gdm.validate();
    for (const auto& p : spec.trajectory) {
        for (const auto& a : spec.anchors.anchors()) {
            if (a.position == p) {
                throw Error(ErrorCode::Singular,
                            "trajectory passes exactly through anchor " + std::to_string(a.id));
            }
        }
    }
}

}  // namespace

TraversalResult run_traversal(const ExperimentSpec& spec) {
    validate(spec);
    const std::size_t n = spec.trajectory.size();
    const std::size_t m = spec.anchors.size();
    const std::size_t methods = spec.methods.size();

    std::vector<std::vector<double>> errors(methods);
    std::vector<std::size_t> failures(methods, 0);
    std::vector<double> seconds(methods, 0.0);
    std::vector<double> iterations(methods, 0.0);
    for (auto& e : errors) e.reserve(n * static_cast<std::size_t>(spec.repetitions));

    TraversalResult result;
    if (spec.keep_restored) result.restored.reserve(n * static_cast<std::size_t>(spec.repetitions));

    std::vector<double> ranges(n * m);
    for (int rep = 0; rep < spec.repetitions; ++rep) {
        NoiseStream noise(spec.noise, spec.substream_base + static_cast<std::uint64_t>(rep));
        for (std::size_t k = 0; k < n; ++k) {
            const auto sample = measure(spec.anchors, spec.trajectory[k], noise, k);
            std::copy(sample.distances.begin(), sample.distances.end(), ranges.begin() + k * m);
        }

        const std::size_t first_row = result.restored.size();
        if (spec.keep_restored) {
            for (std::size_t k = 0; k < n; ++k) {
                result.restored.push_back({static_cast<std::size_t>(rep), k, spec.trajectory[k],
                                           std::vector<Point2D>(methods), std::vector<bool>(methods)});
            }
        }

        for (std::size_t mi = 0; mi < methods; ++mi) {
            std::vector<PointOutcome> outcomes(n);
            const auto start = std::chrono::steady_clock::now();
            for (std::size_t k = 0; k < n; ++k) {
                outcomes[k] = estimate(spec.methods[mi], spec.anchors,
                                       std::span<const double>(ranges).subspan(k * m, m), spec.gdm);
            }
            seconds[mi] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

            for (std::size_t k = 0; k < n; ++k) {
                const auto& out = outcomes[k];
                iterations[mi] += out.iterations;
                if (out.ok) {
                    errors[mi].push_back(distance(out.position, spec.trajectory[k]));
                } else {
                    ++failures[mi];
                }
                if (spec.keep_restored) {
                    auto& row = result.restored[first_row + k];
                    row.estimates[mi] = out.position;
                    row.ok[mi] = out.ok;
                }
            }
        }
    }

    const double total = static_cast<double>(n) * spec.repetitions;
    for (std::size_t mi = 0; mi < methods; ++mi) {
        MethodStats s;
        s.method = spec.methods[mi];
        s.mean = mean(errors[mi]);
        s.stddev = stddev(errors[mi]);
        s.seconds_per_traversal = seconds[mi] / spec.repetitions;
        s.samples = errors[mi].size();
        s.failures = failures[mi];
        s.mean_iterations = iterations[mi] / total;
        result.stats.push_back(s);
    }
    return result;
}

std::vector<SweepRow> noise_sweep(const SweepSpec& spec) {
    if (spec.levels.empty()) throw Error(ErrorCode::InvalidArgument, "noise sweep needs at least one level");
    if (spec.placements.empty()) throw Error(ErrorCode::InvalidArgument, "noise sweep needs a placement");
    std::vector<SweepRow> rows;
    for (const auto& placement : spec.placements) {
        for (const auto kind : spec.kinds) {
            for (const double level : spec.levels) {
                ExperimentSpec cell{placement.anchors, spec.trajectory, NoiseModel{kind, level, spec.seed},
                                    spec.repetitions, spec.methods, spec.gdm};
                const auto result = run_traversal(cell);
                for (const auto& s : result.stats) rows.push_back({placement.name, kind, level, s});
            }
        }
    }
    return rows;
}

Region placement_area(const Region& region, PlacementArea area) {
    if (area == PlacementArea::Full) return region;
    return Region({region.min().x, region.centroid().y}, region.max());
}

AnchorSet random_placement(const Region& area, std::size_t anchor_count, std::uint64_t seed,
                           std::uint64_t placement, std::size_t* redraws) {
    if (anchor_count < 3) throw Error(ErrorCode::InvalidArgument, "random placements need 3+ anchors");
    RandomStream random(seed, placement);
    for (;;) {
        std::vector<Point2D> points;
        points.reserve(anchor_count);
        for (std::size_t i = 0; i < anchor_count; ++i) {
            const double x = random.uniform(area.min().x, area.max().x);
            const double y = random.uniform(area.min().y, area.max().y);
            points.push_back({x, y});
        }
        bool distinct = true;
        for (std::size_t i = 0; i < points.size() && distinct; ++i) {
            for (std::size_t j = i + 1; j < points.size(); ++j) distinct = distinct && points[i] != points[j];
        }
        if (distinct) {
            auto anchors = AnchorSet::from_points(points);
            if (!anchors.all_collinear()) return anchors;
        }
        if (redraws) ++*redraws;
    }
}

RgapResult rgap_study(const RgapSpec& spec) {
    if (spec.placements < 1) throw Error(ErrorCode::InvalidArgument, "need at least one placement");
    if (spec.anchor_count < 3) throw Error(ErrorCode::InvalidArgument, "random placements need 3+ anchors");
    if (spec.trajectory.empty()) throw Error(ErrorCode::InvalidArgument, "trajectory is empty");

    const Region area = placement_area(spec.region, spec.area);
    RgapResult result;
    std::vector<double> scores;
    std::vector<std::vector<double>> errors(spec.methods.size());

    for (std::size_t k = 0; k < spec.placements; ++k) {
        auto anchors = random_placement(area, spec.anchor_count, spec.noise.seed, k, &result.redraws);
        const double score = trajectory_score(anchors, std::span<const Point2D>(spec.trajectory)).value;

        ExperimentSpec run{anchors, spec.trajectory, spec.noise, spec.repetitions, spec.methods, spec.gdm};
        run.substream_base = (static_cast<std::uint64_t>(k) + 1) << 32;
        auto traversal = run_traversal(run);

        for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) errors[mi].push_back(traversal.stats[mi].mean);
        scores.push_back(score);
        result.placements.push_back({k, std::move(anchors), score, std::move(traversal.stats)});
    }

    result.mean_score = mean(scores);
    for (const auto& e : errors) {
        result.mean_error.push_back(mean(e));
        result.score_error_rank.push_back(scores.size() >= 2 ? spearman(scores, e) : 0.0);
    }
    result.score_histogram = histogram(scores, 20);
    return result;
}

}  // namespace anchorlab
