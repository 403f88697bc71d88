#include "anchorlab/replay.hpp"

#include <chrono>
#include <ostream>
#include <string>

#include "anchorlab/error.hpp"
#include "localizers_core.hpp"

namespace anchorlab {

FieldLog make_field_log(RangeLog log, double gap_threshold) {
    if (!(gap_threshold > 0.0)) throw Error(ErrorCode::InvalidArgument, "gap threshold must be positive");
    FieldLog field;
    field.gap_before.assign(log.rows.size(), false);
    for (std::size_t k = 1; k < log.rows.size(); ++k) {
        if (log.rows[k].epoch - log.rows[k - 1].epoch > gap_threshold) {
            field.gap_before[k] = true;
            ++field.gaps;
        }
    }
    field.log = std::move(log);
    return field;
}

ReplayResult replay(const FieldLog& field, const AnchorSet& anchors, const std::vector<Method>& methods,
                    const GdmConfig& gdm) {
    const auto& log = field.log;
    if (log.anchor_count != anchors.size()) {
        throw Error(ErrorCode::Mismatch, "log has " + std::to_string(log.anchor_count) +
                                             " range columns but " + std::to_string(anchors.size()) +
                                             " anchors were given");
    }
    if (methods.empty()) throw Error(ErrorCode::InvalidArgument, "no methods requested");
    gdm.validate();

    ReplayResult result;
    result.methods = methods;
    result.malformed = log.malformed;
    result.gaps = field.gaps;

    const std::size_t nm = methods.size();
    std::vector<std::vector<double>> errors(nm);
    std::vector<std::size_t> failures(nm, 0);
    std::vector<double> seconds(nm, 0.0);

    for (std::size_t k = 0; k < log.rows.size(); ++k) {
        const auto& row = log.rows[k];
        ReplayRow out{row.epoch, field.gap_before[k], row.truth, std::vector<Point2D>(nm), std::vector<bool>(nm)};
        for (std::size_t mi = 0; mi < nm; ++mi) {
            const auto start = std::chrono::steady_clock::now();
            const Point2D reference = detail::lsm_core(anchors, row.distances).position;
            Estimate est;
            switch (methods[mi]) {
                case Method::Lsm: est.position = reference; break;
                case Method::Gdm: est = detail::gdm_core(anchors, row.distances, reference, gdm); break;
                case Method::Tplm: est = detail::tplm_core(anchors, row.distances, reference); break;
            }
            seconds[mi] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            out.estimates[mi] = est.position;
            out.ok[mi] = est.ok();
            if (!est.ok()) {
                ++failures[mi];
            } else if (row.truth) {
                errors[mi].push_back(distance(est.position, *row.truth));
            }
        }
        result.rows.push_back(std::move(out));
    }

    for (std::size_t mi = 0; mi < nm; ++mi) {
        MethodStats s;
        s.method = methods[mi];
        s.mean = mean(errors[mi]);
        s.stddev = stddev(errors[mi]);
        s.seconds_per_traversal = seconds[mi];
        s.samples = errors[mi].size();
        s.failures = failures[mi];
        result.stats.push_back(s);
    }
    return result;
}

void write_replay_csv(std::ostream& out, const ReplayResult& result) {
    const bool truth = !result.rows.empty() && result.rows.front().truth.has_value();
    out << "epoch,gap";
    for (const auto m : result.methods) out << ',' << to_string(m) << "_x," << to_string(m) << "_y";
    if (truth) out << ",x_true,y_true";
    out << '\n';
    for (const auto& row : result.rows) {
        out << format_fixed(row.epoch) << ',' << (row.gap ? 1 : 0);
        for (const auto& p : row.estimates) out << ',' << format_fixed(p.x) << ',' << format_fixed(p.y);
        if (truth && row.truth) out << ',' << format_fixed(row.truth->x) << ',' << format_fixed(row.truth->y);
        out << '\n';
    }
}

RangeLog synthesize_range_log(const AnchorSet& anchors, std::span<const Point2D> path,
                              const NoiseModel& noise, double period) {
    if (!(period > 0.0)) throw Error(ErrorCode::InvalidArgument, "sampling period must be positive");
    RangeLog log;
    log.anchor_count = anchors.size();
    log.has_truth = true;
    NoiseStream stream(noise, 0);
    for (std::size_t k = 0; k < path.size(); ++k) {
        const auto sample = measure(anchors, path[k], stream, k);
        log.rows.push_back({period * static_cast<double>(k), sample.distances, path[k]});
    }
    return log;
}

}  // namespace anchorlab
