#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dem/particle.hpp"
#include "metrics/field2d.hpp"

namespace recoat {

// Voxel-center occupancy over a regular lattice: a voxel counts as solid iff
// its center lies strictly inside any sphere. Columns run along z so interval
// counts reduce to masked popcounts.
class VoxelMask {
 public:
  // Lattice centers at anchor + (k + 1/2) * edge per axis. When L_y > 0 and
  // the y extent spans the periodic cell, sphere images wrap in y.
  void build(std::span<const Particle> particles, double x0, double y0,
             double z0, int nx, int ny, int nz, double edge, double L_y);

  int64_t count_all() const;
  // Columns ix in [ix0, ix1), iy in [iy0, iy1), bits iz in [iz0, iz1).
  int64_t count_box(int ix0, int ix1, int iy0, int iy1, int iz0,
                    int iz1) const;

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }

 private:
  void mark_column(int ix, int iy, int iz0, int iz1);

  int nx_ = 0, ny_ = 0, nz_ = 0, words_per_col_ = 0;
  std::vector<uint64_t> bits_;
};

struct PackingWindow {
  double x0 = 0.0, x1 = 0.0;
  double y0 = 0.0, y1 = 0.0;
  double L_y = 0.0;  // periodic width, 0 = non-periodic
};

// Per-bin packing fraction: particle volume in the bin footprint (voxel
// union over the full column) divided by h x bin area. h is the reference
// layer height, either measured t or nominal t0.
ScalarField2D packing_fraction_field(std::span<const Particle> particles,
                                     const PackingWindow& win, double delta_pf,
                                     double delta_v, double h);

// Mean solid fraction of the slab z in [z_lo, z_hi) over the window.
double sublayer_packing(std::span<const Particle> particles,
                        const PackingWindow& win, double z_lo, double z_hi,
                        double delta_v);

// Solid fraction of an axis-aligned box, lattice anchored at the box corner.
double box_packing(std::span<const Particle> particles, double x0, double y0,
                   double z0, double x1, double y1, double z1, double delta_v,
                   double L_y);

}  // namespace recoat
