#pragma once

#include <filesystem>
#include <iosfwd>

#include "anchorlab/geometry.hpp"

namespace anchorlab {

/// Maps longitude/latitude in degrees to the local metric frame: offsets
/// from the origin are scaled to meters per axis, then rotated clockwise by
/// `rotation` radians.
struct GeoTransform {
    double origin_lon = 0.0;
    double origin_lat = 0.0;
    double x_scale = 1.0;  // meters per degree of longitude
    double y_scale = 1.0;  // meters per degree of latitude
    double rotation = 0.0;

    void validate() const;
    Point2D to_local(double lon, double lat) const;

    /// Parameters of the published field testbed.
    static GeoTransform field_testbed();
};

Point2D geo_to_local(const GeoTransform& transform, double lon, double lat);

/// CSV with header `lon0,lat0,x_scale,y_scale,alpha` and one data row.
GeoTransform read_geo_transform(std::istream& in);
GeoTransform load_geo_transform(const std::filesystem::path& path);
void write_geo_transform(std::ostream& out, const GeoTransform& transform);

}  // namespace anchorlab
