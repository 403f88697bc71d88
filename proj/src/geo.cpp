#include "anchorlab/geo.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "anchorlab/csv_io.hpp"
#include "anchorlab/error.hpp"

namespace anchorlab {

void GeoTransform::validate() const {
    if (!(x_scale > 0.0) || !(y_scale > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "geo transform scales must be positive");
    }
    if (!std::isfinite(origin_lon) || !std::isfinite(origin_lat) || !std::isfinite(rotation) ||
        !std::isfinite(x_scale) || !std::isfinite(y_scale)) {
        throw Error(ErrorCode::InvalidArgument, "geo transform has a non-finite parameter");
    }
}

Point2D GeoTransform::to_local(double lon, double lat) const {
    const double east = (lon - origin_lon) * x_scale;
    const double north = (lat - origin_lat) * y_scale;
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    return {c * east + s * north, -s * east + c * north};
}

GeoTransform GeoTransform::field_testbed() {
    return {-74.476069, 40.537808, 84719.0, 111045.0, 0.381583};
}

Point2D geo_to_local(const GeoTransform& transform, double lon, double lat) {
    transform.validate();
    return transform.to_local(lon, lat);
}

GeoTransform read_geo_transform(std::istream& in) {
    std::string line;
    std::vector<std::string> header;
    std::vector<std::string> values;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#' || line == "\r") continue;
        if (header.empty()) {
            header = split_csv_line(line);
        } else {
            values = split_csv_line(line);
            break;
        }
    }
    const std::vector<std::string> expected{"lon0", "lat0", "x_scale", "y_scale", "alpha"};
    if (header != expected || values.size() != expected.size()) {
        throw Error(ErrorCode::Parse, "geo transform file must be 'lon0,lat0,x_scale,y_scale,alpha' plus one row");
    }
    GeoTransform t{parse_double(values[0]), parse_double(values[1]), parse_double(values[2]),
                   parse_double(values[3]), parse_double(values[4])};
    t.validate();
    return t;
}

GeoTransform load_geo_transform(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
    return read_geo_transform(in);
}

void write_geo_transform(std::ostream& out, const GeoTransform& t) {
    out << "lon0,lat0,x_scale,y_scale,alpha\n"
        << format_exact(t.origin_lon) << ',' << format_exact(t.origin_lat) << ','
        << format_exact(t.x_scale) << ',' << format_exact(t.y_scale) << ',' << format_exact(t.rotation)
        << '\n';
}

}  // namespace anchorlab
