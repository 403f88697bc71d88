#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "anchorlab/csv_io.hpp"
#include "anchorlab/experiments.hpp"
#include "anchorlab/localizers.hpp"

namespace anchorlab {

/// Nominal UWB rate is about two samples per second; a silence longer
/// than this many seconds is marked as a gap.
inline constexpr double kDefaultGapThreshold = 3.0;

/// Recorded ranges with gap markers. `gap_before[k]` is set when row k
/// follows its predecessor by more than the threshold.
struct FieldLog {
    RangeLog log;
    std::vector<bool> gap_before;
    std::size_t gaps = 0;
};

FieldLog make_field_log(RangeLog log, double gap_threshold = kDefaultGapThreshold);

struct ReplayRow {
    double epoch = 0.0;
    bool gap = false;
    std::optional<Point2D> truth;
    std::vector<Point2D> estimates;  // follows ReplayResult::methods
    std::vector<bool> ok;
};

struct ReplayResult {
    std::vector<Method> methods;
    std::vector<ReplayRow> rows;
    /// Error statistics against the logged truth, when the log carries it.
    std::vector<MethodStats> stats;
    std::size_t malformed = 0;
    std::size_t gaps = 0;
};

/// Runs every method on each logged epoch as recorded; nothing is
/// interpolated across gaps. Throws Mismatch when the log and the anchor
/// set disagree on the anchor count.
ReplayResult replay(const FieldLog& log, const AnchorSet& anchors,
                    const std::vector<Method>& methods = kAllMethods, const GdmConfig& gdm = {});

/// `epoch,gap,<method>_x,<method>_y,...[,x_true,y_true]`
void write_replay_csv(std::ostream& out, const ReplayResult& result);

/// Samples `path` once per `period` seconds into a range log, one fresh
/// noise draw per anchor and row.
RangeLog synthesize_range_log(const AnchorSet& anchors, std::span<const Point2D> path,
                              const NoiseModel& noise, double period = 0.5);

}  // namespace anchorlab
