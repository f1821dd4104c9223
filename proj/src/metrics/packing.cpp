#include "metrics/packing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "common/error.hpp"
#include "geom/process.hpp"

namespace recoat {

namespace {

// nearest integer ratio, throws unless b tiles a almost exactly
int exact_ratio(double a, double b, const char* what) {
  const double q = a / b;
  const auto n = static_cast<int>(std::llround(q));
  if (n <= 0 || std::abs(q - n) > 1e-6)
    fail(ErrorCode::invalid_parameter, std::string("packing: ") + what +
                                           " must tile the window exactly");
  return n;
}

}  // namespace

void VoxelMask::mark_column(int ix, int iy, int iz0, int iz1) {
  iz0 = std::max(iz0, 0);
  iz1 = std::min(iz1, nz_);
  if (iz0 >= iz1) return;
  uint64_t* col =
      bits_.data() + (static_cast<size_t>(ix) * ny_ + iy) * words_per_col_;
  int w0 = iz0 >> 6, w1 = (iz1 - 1) >> 6;
  const uint64_t first = ~0ull << (iz0 & 63);
  const uint64_t last = ~0ull >> (63 - ((iz1 - 1) & 63));
  if (w0 == w1) {
    col[w0] |= first & last;
    return;
  }
  col[w0] |= first;
  for (int w = w0 + 1; w < w1; ++w) col[w] = ~0ull;
  col[w1] |= last;
}

void VoxelMask::build(std::span<const Particle> particles, double x0,
                      double y0, double z0, int nx, int ny, int nz,
                      double edge, double L_y) {
  if (nx <= 0 || ny <= 0 || nz <= 0 || edge <= 0.0)
    fail(ErrorCode::invalid_parameter, "voxel mask: bad lattice");
  nx_ = nx;
  ny_ = ny;
  nz_ = nz;
  words_per_col_ = (nz + 63) / 64;
  bits_.assign(static_cast<size_t>(nx) * ny * words_per_col_, 0);

  const bool wrap =
      L_y > 0.0 && std::abs(ny * edge - L_y) < 1e-9 * std::max(1.0, L_y);
  for (const Particle& p : particles) {
    if (!p.active) continue;
    const double r = p.r;
    const int ix0 = static_cast<int>(std::ceil((p.r_G.x - r - x0) / edge - 0.5));
    const int ix1 =
        static_cast<int>(std::floor((p.r_G.x + r - x0) / edge - 0.5));
    const int iy0 = static_cast<int>(std::ceil((p.r_G.y - r - y0) / edge - 0.5));
    const int iy1 =
        static_cast<int>(std::floor((p.r_G.y + r - y0) / edge - 0.5));
    for (int iy = iy0; iy <= iy1; ++iy) {
      int iyw = iy;
      if (wrap) {
        iyw = iy % ny;
        if (iyw < 0) iyw += ny;
      } else if (iy < 0 || iy >= ny) {
        continue;
      }
      const double cy = y0 + (iy + 0.5) * edge;
      const double dy =
          L_y > 0.0 ? min_image_dy(cy - p.r_G.y, L_y) : cy - p.r_G.y;
      for (int ix = std::max(ix0, 0); ix <= std::min(ix1, nx - 1); ++ix) {
        const double dx = x0 + (ix + 0.5) * edge - p.r_G.x;
        const double rho2 = dx * dx + dy * dy;
        if (rho2 >= r * r) continue;
        const double half = std::sqrt(r * r - rho2);
        // centers (iz + 1/2) edge strictly inside (zc - half, zc + half)
        const int a = static_cast<int>(
            std::floor((p.r_G.z - half - z0) / edge - 0.5)) + 1;
        const int b = static_cast<int>(
            std::ceil((p.r_G.z + half - z0) / edge - 0.5)) - 1;
        mark_column(ix, iyw, a, b + 1);
      }
    }
  }
}

int64_t VoxelMask::count_all() const {
  int64_t n = 0;
  for (const uint64_t w : bits_) n += std::popcount(w);
  return n;
}

int64_t VoxelMask::count_box(int ix0, int ix1, int iy0, int iy1, int iz0,
                             int iz1) const {
  ix0 = std::max(ix0, 0);
  iy0 = std::max(iy0, 0);
  iz0 = std::max(iz0, 0);
  ix1 = std::min(ix1, nx_);
  iy1 = std::min(iy1, ny_);
  iz1 = std::min(iz1, nz_);
  if (ix0 >= ix1 || iy0 >= iy1 || iz0 >= iz1) return 0;
  const int w0 = iz0 >> 6, w1 = (iz1 - 1) >> 6;
  const uint64_t first = ~0ull << (iz0 & 63);
  const uint64_t last = ~0ull >> (63 - ((iz1 - 1) & 63));
  int64_t n = 0;
  for (int ix = ix0; ix < ix1; ++ix) {
    for (int iy = iy0; iy < iy1; ++iy) {
      const uint64_t* col =
          bits_.data() + (static_cast<size_t>(ix) * ny_ + iy) * words_per_col_;
      if (w0 == w1) {
        n += std::popcount(col[w0] & first & last);
        continue;
      }
      n += std::popcount(col[w0] & first);
      for (int w = w0 + 1; w < w1; ++w) n += std::popcount(col[w]);
      n += std::popcount(col[w1] & last);
    }
  }
  return n;
}

namespace {

double top_of_pile(std::span<const Particle> particles) {
  double z = 0.0;
  for (const Particle& p : particles)
    if (p.active) z = std::max(z, p.r_G.z + p.r);
  return z;
}

}  // namespace

ScalarField2D packing_fraction_field(std::span<const Particle> particles,
                                     const PackingWindow& win, double delta_pf,
                                     double delta_v, double h) {
  if (h <= 0.0) fail(ErrorCode::invalid_parameter, "packing: h must be > 0");
  const int nbx = exact_ratio(win.x1 - win.x0, delta_pf, "bin size (x)");
  const int nby = exact_ratio(win.y1 - win.y0, delta_pf, "bin size (y)");
  const int sub = exact_ratio(delta_pf, delta_v, "voxel edge");

  const double z_top = top_of_pile(particles);
  const int nz = std::max(1, static_cast<int>(std::ceil(z_top / delta_v)) + 1);
  VoxelMask mask;
  mask.build(particles, win.x0, win.y0, 0.0, nbx * sub, nby * sub, nz, delta_v,
             win.L_y);

  ScalarField2D f = make_field(win.x0, win.y0, delta_pf, nbx, nby, 0.0);
  const double vol_scale =
      delta_v * delta_v * delta_v / (h * delta_pf * delta_pf);
  for (int by = 0; by < nby; ++by)
    for (int bx = 0; bx < nbx; ++bx)
      f.at(bx, by) = vol_scale * static_cast<double>(mask.count_box(
                                     bx * sub, (bx + 1) * sub, by * sub,
                                     (by + 1) * sub, 0, nz));
  return f;
}

double sublayer_packing(std::span<const Particle> particles,
                        const PackingWindow& win, double z_lo, double z_hi,
                        double delta_v) {
  if (!(z_lo >= 0.0) || !(z_hi > z_lo))
    fail(ErrorCode::invalid_parameter, "sublayer packing: empty z-interval");
  const double ext_x = win.x1 - win.x0;
  const double ext_y = win.y1 - win.y0;
  if (ext_x <= 0.0 || ext_y <= 0.0 || delta_v <= 0.0)
    fail(ErrorCode::invalid_parameter, "sublayer packing: bad window");
  const int nx = std::max(1, static_cast<int>(std::floor(ext_x / delta_v)));
  const int ny = std::max(1, static_cast<int>(std::floor(ext_y / delta_v)));
  // centers (iz + 1/2) delta_v inside [z_lo, z_hi)
  const int iz0 = static_cast<int>(std::ceil(z_lo / delta_v - 0.5));
  const int iz1 = static_cast<int>(std::ceil(z_hi / delta_v - 0.5));
  if (iz1 <= iz0) return 0.0;

  VoxelMask mask;
  mask.build(particles, win.x0, win.y0, 0.0, nx, ny, iz1, delta_v, win.L_y);
  const int64_t occ = mask.count_box(0, nx, 0, ny, iz0, iz1);
  const int64_t total = static_cast<int64_t>(nx) * ny * (iz1 - iz0);
  return static_cast<double>(occ) / static_cast<double>(total);
}

double box_packing(std::span<const Particle> particles, double x0, double y0,
                   double z0, double x1, double y1, double z1, double delta_v,
                   double L_y) {
  if (!(x1 > x0) || !(y1 > y0) || !(z1 > z0)) return 0.0;
  const int nx = static_cast<int>(std::floor((x1 - x0) / delta_v));
  const int ny = static_cast<int>(std::floor((y1 - y0) / delta_v));
  const int nz = static_cast<int>(std::floor((z1 - z0) / delta_v));
  if (nx <= 0 || ny <= 0 || nz <= 0) return 0.0;
  VoxelMask mask;
  mask.build(particles, x0, y0, z0, nx, ny, nz, delta_v, L_y);
  return static_cast<double>(mask.count_all()) /
         (static_cast<double>(nx) * ny * nz);
}

}  // namespace recoat
