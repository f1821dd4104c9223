#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recoat {

// Regular 2D scalar field over an (x, y) window. Values sit at cell centers:
// x = origin_x + (i + 1/2) * pitch.
struct ScalarField2D {
  double origin_x = 0.0, origin_y = 0.0;
  double pitch = 0.0;
  int nx = 0, ny = 0;
  std::vector<double> v;  // row-major, index = iy * nx + ix

  double& at(int ix, int iy) { return v[static_cast<size_t>(iy) * nx + ix]; }
  double at(int ix, int iy) const {
    return v[static_cast<size_t>(iy) * nx + ix];
  }
};

ScalarField2D make_field(double origin_x, double origin_y, double pitch,
                         int nx, int ny, double fill = 0.0);

struct FieldStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

// Arithmetic mean and population standard deviation over all cells.
FieldStats field_stats(const ScalarField2D& f);

// Matrix CSV: comment header carries origin/pitch/shape, one row per y index.
void write_field_csv(std::ostream& os, const ScalarField2D& f);
void write_field_csv_file(const std::string& path, const ScalarField2D& f);

}  // namespace recoat
