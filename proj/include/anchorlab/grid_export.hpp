#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>

#include "anchorlab/gdop.hpp"

namespace anchorlab {

/// `# nx ny` comment line, then ny rows of nx comma-separated values.
/// Row k holds the nodes with y index k (ascending y). Infinity prints as `inf`.
void write_grid_csv(std::ostream& out, std::size_t nx, std::size_t ny, std::span<const double> values);

/// Binary 8-bit PGM (P5). Finite values are scaled linearly from the
/// declared min/max to 0..254 and infinity maps to 255. The first image row
/// is the highest y so the picture is north-up.
void write_grid_pgm(std::ostream& out, std::size_t nx, std::size_t ny, std::span<const double> values);

void write_grid_csv(std::ostream& out, const LvtGrid& grid);
void write_grid_pgm(std::ostream& out, const LvtGrid& grid);
void write_grid_csv(std::ostream& out, const OsapMap& map);
void write_grid_pgm(std::ostream& out, const OsapMap& map);

}  // namespace anchorlab
