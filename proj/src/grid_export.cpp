#include "anchorlab/grid_export.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "anchorlab/csv_io.hpp"
#include "anchorlab/error.hpp"

namespace anchorlab {

namespace {

void require_shape(std::size_t nx, std::size_t ny, std::span<const double> values) {
    if (values.size() != nx * ny) throw Error(ErrorCode::InvalidArgument, "grid shape does not match values");
}

std::vector<double> as_values(const OsapMap& map) {
    return std::vector<double>(map.pairs.begin(), map.pairs.end());
}

}  // namespace

void write_grid_csv(std::ostream& out, std::size_t nx, std::size_t ny, std::span<const double> values) {
    require_shape(nx, ny, values);
    out << "# " << nx << ' ' << ny << '\n';
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            if (ix) out << ',';
            out << format_fixed(values[iy * nx + ix]);
        }
        out << '\n';
    }
}

void write_grid_pgm(std::ostream& out, std::size_t nx, std::size_t ny, std::span<const double> values) {
    require_shape(nx, ny, values);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!std::isfinite(lo)) lo = hi = 0.0;
    const double span = hi - lo;

    out << "P5\n# min " << format_fixed(lo) << " max " << format_fixed(hi) << " scale 0-254 inf 255\n"
        << nx << ' ' << ny << "\n255\n";
    std::string row(nx, '\0');
    for (std::size_t r = 0; r < ny; ++r) {
        const std::size_t iy = ny - 1 - r;
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double v = values[iy * nx + ix];
            unsigned char level = 255;
            if (std::isfinite(v)) {
                level = span > 0.0 ? static_cast<unsigned char>(std::lround((v - lo) / span * 254.0)) : 0;
            }
            row[ix] = static_cast<char>(level);
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

void write_grid_csv(std::ostream& out, const LvtGrid& grid) { write_grid_csv(out, grid.nx, grid.ny, grid.values); }
void write_grid_pgm(std::ostream& out, const LvtGrid& grid) { write_grid_pgm(out, grid.nx, grid.ny, grid.values); }

void write_grid_csv(std::ostream& out, const OsapMap& map) {
    require_shape(map.nx, map.ny, as_values(map));
    out << "# " << map.nx << ' ' << map.ny << '\n';
    for (std::size_t iy = 0; iy < map.ny; ++iy) {
        for (std::size_t ix = 0; ix < map.nx; ++ix) {
            if (ix) out << ',';
            out << map.pairs[iy * map.nx + ix];
        }
        out << '\n';
    }
}

void write_grid_pgm(std::ostream& out, const OsapMap& map) { write_grid_pgm(out, map.nx, map.ny, as_values(map)); }

}  // namespace anchorlab
