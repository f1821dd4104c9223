#include "metrics/field2d.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "common/error.hpp"

namespace recoat {

namespace {

std::string shortest(double v) {
  char b[32];
  const auto res = std::to_chars(b, b + sizeof b, v);
  return std::string(b, res.ptr);
}

}  // namespace

ScalarField2D make_field(double origin_x, double origin_y, double pitch,
                         int nx, int ny, double fill) {
  if (nx <= 0 || ny <= 0 || pitch <= 0.0)
    fail(ErrorCode::invalid_parameter, "field: bad shape");
  ScalarField2D f;
  f.origin_x = origin_x;
  f.origin_y = origin_y;
  f.pitch = pitch;
  f.nx = nx;
  f.ny = ny;
  f.v.assign(static_cast<size_t>(nx) * static_cast<size_t>(ny), fill);
  return f;
}

FieldStats field_stats(const ScalarField2D& f) {
  if (f.v.empty()) fail(ErrorCode::invalid_parameter, "field stats: empty field");
  const auto [lo, hi] = std::minmax_element(f.v.begin(), f.v.end());
  // A constant field reads exactly zero spread; the mean's rounding must not
  // manufacture one.
  if (*lo == *hi) return {*lo, 0.0};
  double sum = 0.0;
  for (const double x : f.v) sum += x;
  const double mean = sum / static_cast<double>(f.v.size());
  double ss = 0.0;
  for (const double x : f.v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(f.v.size()))};
}

void write_field_csv(std::ostream& os, const ScalarField2D& f) {
  char buf[64];
  os << "# origin_x=" << shortest(f.origin_x)
     << " origin_y=" << shortest(f.origin_y) << " pitch=" << shortest(f.pitch)
     << " nx=" << f.nx << " ny=" << f.ny << "\n";
  for (int iy = 0; iy < f.ny; ++iy) {
    for (int ix = 0; ix < f.nx; ++ix) {
      std::snprintf(buf, sizeof buf, "%.16e", f.at(ix, iy));
      os << buf << (ix + 1 < f.nx ? "," : "\n");
    }
  }
}

void write_field_csv_file(const std::string& path, const ScalarField2D& f) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::io, "cannot write " + path);
  write_field_csv(os, f);
  os.flush();
  if (!os) fail(ErrorCode::io, "write failed for " + path);
}

}  // namespace recoat
