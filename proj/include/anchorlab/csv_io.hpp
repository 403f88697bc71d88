#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anchorlab/experiments.hpp"
#include "anchorlab/geo.hpp"
#include "anchorlab/geometry.hpp"

namespace anchorlab {

// Data files (trajectories, anchors, range logs) are written with the
// shortest representation that parses back to the same double. Reports
// (stats, scores, restored positions) use six decimals.

std::string format_exact(double value);
std::string format_fixed(double value, int decimals = 6);

/// "xmin,ymin,xmax,ymax"
Region parse_region(std::string_view text);
std::string format_region(const Region& region);

/// CSV with header `x,y`.
std::vector<Point2D> read_points_csv(std::istream& in);
void write_points_csv(std::ostream& out, std::span<const Point2D> points);
Trajectory load_trajectory(const std::filesystem::path& path);
void save_trajectory(const std::filesystem::path& path, const Trajectory& trajectory);

/// CSV with header `id,x,y` (local meters) or `id,lon,lat`. Geographic
/// files need a transform to map them into the local frame.
AnchorSet read_anchors_csv(std::istream& in, const std::optional<GeoTransform>& geo = std::nullopt);
void write_anchors_csv(std::ostream& out, const AnchorSet& anchors);
AnchorSet load_anchors(const std::filesystem::path& path,
                       const std::optional<GeoTransform>& geo = std::nullopt);

/// One row of a range log. `epoch` carries the sample time in seconds.
struct RangeLogRow {
    double epoch = 0.0;
    std::vector<double> distances;
    std::optional<Point2D> truth;

    friend bool operator==(const RangeLogRow&, const RangeLogRow&) = default;
};

/// CSV `epoch,d1,...,dm[,x_true,y_true]` with a header naming the columns.
struct RangeLog {
    std::size_t anchor_count = 0;
    bool has_truth = false;
    std::vector<RangeLogRow> rows;
    /// Rows skipped while parsing: wrong column count, unparsable numbers,
    /// negative ranges or timestamps that go backwards.
    std::size_t malformed = 0;
};

RangeLog read_range_log(std::istream& in);
void write_range_log(std::ostream& out, const RangeLog& log);
RangeLog load_range_log(const std::filesystem::path& path);

/// `method,ap,level,ave,std,time`
void write_stats_csv(std::ostream& out, std::string_view placement, double level,
                     std::span<const MethodStats> stats, bool header = true);
/// Same columns plus a trailing `model`.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
/// `rep,index,x_true,y_true,<method>_x,<method>_y,...`
void write_restored_csv(std::ostream& out, std::span<const Method> methods,
                        std::span<const RestoredPoint> rows);
/// `placement,score,<method>_ave,<method>_std,...`
void write_rgap_csv(std::ostream& out, std::span<const Method> methods,
                    std::span<const RgapPlacement> placements);

std::vector<std::string> split_csv_line(std::string_view line);
double parse_double(std::string_view text);

}  // namespace anchorlab
