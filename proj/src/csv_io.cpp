#include "anchorlab/csv_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "anchorlab/error.hpp"

namespace anchorlab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool blank_or_comment(std::string_view line) {
    line = trim(line);
    return line.empty() || line.front() == '#';
}

// Next non-blank, non-comment line.
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!blank_or_comment(line)) return true;
    }
    return false;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    return out;
}

bool try_parse_double(std::string_view text, double& value) {
    text = trim(text);
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::string format_exact(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string format_fixed(double value, int decimals) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    std::array<char, 128> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
    return std::string(buf.data(), ptr);
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                 : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_double(std::string_view text) {
    double value = 0.0;
    if (!try_parse_double(text, value)) {
        throw Error(ErrorCode::Parse, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

Region parse_region(std::string_view text) {
    const auto fields = split_csv_line(text);
    if (fields.size() != 4) {
        throw Error(ErrorCode::Parse, "region must be 'xmin,ymin,xmax,ymax', got '" + std::string(text) + "'");
    }
    return Region({parse_double(fields[0]), parse_double(fields[1])},
                  {parse_double(fields[2]), parse_double(fields[3])});
}

std::string format_region(const Region& region) {
    return format_exact(region.min().x) + "," + format_exact(region.min().y) + "," +
           format_exact(region.max().x) + "," + format_exact(region.max().y);
}

std::vector<Point2D> read_points_csv(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw Error(ErrorCode::Parse, "point file is empty");
    const auto header = split_csv_line(line);
    if (header.size() != 2 || header[0] != "x" || header[1] != "y") {
        throw Error(ErrorCode::Parse, "point file must start with header 'x,y'");
    }
    std::vector<Point2D> points;
    std::size_t line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        const auto f = split_csv_line(line);
        if (f.size() != 2) {
            throw Error(ErrorCode::Parse, "point row " + std::to_string(line_no) + " needs two fields");
        }
        points.push_back({parse_double(f[0]), parse_double(f[1])});
    }
    return points;
}

void write_points_csv(std::ostream& out, std::span<const Point2D> points) {
    out << "x,y\n";
    for (const auto& p : points) out << format_exact(p.x) << ',' << format_exact(p.y) << '\n';
}

Trajectory load_trajectory(const std::filesystem::path& path) {
    auto in = open_input(path);
    return Trajectory(read_points_csv(in));
}

void save_trajectory(const std::filesystem::path& path, const Trajectory& trajectory) {
    auto out = open_output(path);
    write_points_csv(out, trajectory.points());
}

AnchorSet read_anchors_csv(std::istream& in, const std::optional<GeoTransform>& geo) {
    std::string line;
    if (!next_line(in, line)) throw Error(ErrorCode::Parse, "anchor file is empty");
    const auto header = split_csv_line(line);
    if (header.size() != 3 || header[0] != "id") {
        throw Error(ErrorCode::Parse, "anchor file must start with header 'id,x,y' or 'id,lon,lat'");
    }
    const bool geographic = header[1] == "lon" && header[2] == "lat";
    if (!geographic && !(header[1] == "x" && header[2] == "y")) {
        throw Error(ErrorCode::Parse, "anchor file must start with header 'id,x,y' or 'id,lon,lat'");
    }
    if (geographic && !geo) {
        throw Error(ErrorCode::InvalidArgument, "anchor file is in lon/lat; a geo transform is required");
    }

    std::vector<Anchor> anchors;
    while (next_line(in, line)) {
        const auto f = split_csv_line(line);
        if (f.size() != 3) throw Error(ErrorCode::Parse, "anchor row needs three fields: '" + line + "'");
        int id = 0;
        const auto [ptr, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), id);
        if (ec != std::errc() || ptr != f[0].data() + f[0].size()) {
            throw Error(ErrorCode::Parse, "anchor id is not an integer: '" + f[0] + "'");
        }
        const double a = parse_double(f[1]);
        const double b = parse_double(f[2]);
        anchors.push_back({id, geographic ? geo->to_local(a, b) : Point2D{a, b}});
    }
    return AnchorSet(std::move(anchors));
}

void write_anchors_csv(std::ostream& out, const AnchorSet& anchors) {
    out << "id,x,y\n";
    for (const auto& a : anchors.anchors()) {
        out << a.id << ',' << format_exact(a.position.x) << ',' << format_exact(a.position.y) << '\n';
    }
}

AnchorSet load_anchors(const std::filesystem::path& path, const std::optional<GeoTransform>& geo) {
    auto in = open_input(path);
    return read_anchors_csv(in, geo);
}

RangeLog read_range_log(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw Error(ErrorCode::Parse, "range log is empty");
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "epoch") {
        throw Error(ErrorCode::Parse, "range log must start with header 'epoch,d1,...,dm[,x_true,y_true]'");
    }
    RangeLog log;
    log.has_truth = header.size() >= 5 && header[header.size() - 2] == "x_true" && header.back() == "y_true";
    log.anchor_count = header.size() - 1 - (log.has_truth ? 2 : 0);
    if (log.anchor_count < 2) throw Error(ErrorCode::Parse, "range log needs at least two range columns");

    const std::size_t columns = header.size();
    double last_epoch = -std::numeric_limits<double>::infinity();
    while (next_line(in, line)) {
        const auto f = split_csv_line(line);
        if (f.size() != columns) {
            ++log.malformed;
            continue;
        }
        std::vector<double> values(columns);
        bool good = true;
        for (std::size_t c = 0; c < columns && good; ++c) good = try_parse_double(f[c], values[c]);
        if (good) {
            for (std::size_t c = 0; c < columns && good; ++c) good = std::isfinite(values[c]);
            for (std::size_t c = 1; c <= log.anchor_count && good; ++c) good = values[c] >= 0.0;
        }
        if (!good || values[0] < last_epoch) {
            ++log.malformed;
            continue;
        }
        last_epoch = values[0];
        RangeLogRow row;
        row.epoch = values[0];
        row.distances.assign(values.begin() + 1, values.begin() + 1 + static_cast<std::ptrdiff_t>(log.anchor_count));
        if (log.has_truth) row.truth = Point2D{values[columns - 2], values[columns - 1]};
        log.rows.push_back(std::move(row));
    }
    return log;
}

void write_range_log(std::ostream& out, const RangeLog& log) {
    out << "epoch";
    for (std::size_t i = 1; i <= log.anchor_count; ++i) out << ",d" << i;
    if (log.has_truth) out << ",x_true,y_true";
    out << '\n';
    for (const auto& row : log.rows) {
        out << format_exact(row.epoch);
        for (double d : row.distances) out << ',' << format_exact(d);
        if (log.has_truth && row.truth) out << ',' << format_exact(row.truth->x) << ',' << format_exact(row.truth->y);
        out << '\n';
    }
}

RangeLog load_range_log(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_range_log(in);
}

void write_stats_csv(std::ostream& out, std::string_view placement, double level,
                     std::span<const MethodStats> stats, bool header) {
    if (header) out << "method,ap,level,ave,std,time\n";
    for (const auto& s : stats) {
        out << to_string(s.method) << ',' << placement << ',' << format_fixed(level) << ','
            << format_fixed(s.mean) << ',' << format_fixed(s.stddev) << ','
            << format_fixed(s.seconds_per_traversal) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "method,ap,level,ave,std,time,model\n";
    for (const auto& r : rows) {
        out << to_string(r.stats.method) << ',' << r.placement << ',' << format_fixed(r.level) << ','
            << format_fixed(r.stats.mean) << ',' << format_fixed(r.stats.stddev) << ','
            << format_fixed(r.stats.seconds_per_traversal) << ',' << to_string(r.kind) << '\n';
    }
}

void write_restored_csv(std::ostream& out, std::span<const Method> methods,
                        std::span<const RestoredPoint> rows) {
    out << "rep,index,x_true,y_true";
    for (const auto m : methods) out << ',' << to_string(m) << "_x," << to_string(m) << "_y";
    out << '\n';
    for (const auto& r : rows) {
        out << r.repetition << ',' << r.index << ',' << format_fixed(r.truth.x) << ',' << format_fixed(r.truth.y);
        for (std::size_t i = 0; i < methods.size(); ++i) {
            out << ',' << format_fixed(r.estimates[i].x) << ',' << format_fixed(r.estimates[i].y);
        }
        out << '\n';
    }
}

void write_rgap_csv(std::ostream& out, std::span<const Method> methods,
                    std::span<const RgapPlacement> placements) {
    out << "placement,score";
    for (const auto m : methods) out << ',' << to_string(m) << "_ave," << to_string(m) << "_std";
    out << '\n';
    for (const auto& p : placements) {
        out << p.id << ',' << format_fixed(p.score);
        for (const auto& s : p.stats) out << ',' << format_fixed(s.mean) << ',' << format_fixed(s.stddev);
        out << '\n';
    }
}

}  // namespace anchorlab
