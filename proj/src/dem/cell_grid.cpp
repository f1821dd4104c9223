#include "dem/cell_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "common/error.hpp"

namespace recoat {

void CellGrid::configure(double cell_edge_min, double lo_x, double hi_x,
                         double lo_z, double hi_z, double L_y) {
  if (cell_edge_min <= 0.0 || hi_x <= lo_x || hi_z <= lo_z || L_y <= 0.0)
    fail(ErrorCode::invalid_parameter, "cell grid: degenerate domain");
  lo_x_ = lo_x;
  hi_x_ = hi_x;
  lo_z_ = lo_z;
  hi_z_ = hi_z;
  L_y_ = L_y;
  nx_ = std::max(1, static_cast<int>(std::floor((hi_x - lo_x) / cell_edge_min)));
  ny_ = std::max(1, static_cast<int>(std::floor(L_y / cell_edge_min)));
  nz_ = std::max(1, static_cast<int>(std::floor((hi_z - lo_z) / cell_edge_min)));
  ex_ = (hi_x - lo_x) / nx_;
  ey_ = L_y / ny_;
  ez_ = (hi_z - lo_z) / nz_;
  start_.assign(static_cast<size_t>(cell_count()) + 1, 0);
}

int CellGrid::cell_index(double x, double y, double z) const {
  int cx = static_cast<int>(std::floor((x - lo_x_) / ex_));
  int cy = static_cast<int>(std::floor(y / ey_));
  int cz = static_cast<int>(std::floor((z - lo_z_) / ez_));
  cx = std::clamp(cx, 0, nx_ - 1);
  cy = std::clamp(cy, 0, ny_ - 1);
  cz = std::clamp(cz, 0, nz_ - 1);
  return (cz * ny_ + cy) * nx_ + cx;
}

void CellGrid::build(std::span<const Particle> particles) {
  const int n = static_cast<int>(particles.size());
  cell_of_.assign(static_cast<size_t>(n), -1);
  std::fill(start_.begin(), start_.end(), 0);

  for (int i = 0; i < n; ++i) {
    const Particle& p = particles[static_cast<size_t>(i)];
    if (!p.active) continue;
    if (p.r_G.x < lo_x_ || p.r_G.x > hi_x_ || p.r_G.z < lo_z_ ||
        p.r_G.z > hi_z_)
      fail(ErrorCode::runtime, "cell grid: particle id " +
                                   std::to_string(p.id) +
                                   " outside broadphase domain");
    cell_of_[static_cast<size_t>(i)] = cell_index(p.r_G.x, p.r_G.y, p.r_G.z);
  }

  for (const int c : cell_of_)
    if (c >= 0) ++start_[static_cast<size_t>(c) + 1];
  for (size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];

  items_.assign(static_cast<size_t>(start_.back()), 0);
  std::vector<int> cursor(start_.begin(), start_.end() - 1);
  for (int i = 0; i < n; ++i) {
    const int c = cell_of_[static_cast<size_t>(i)];
    if (c >= 0) items_[static_cast<size_t>(cursor[static_cast<size_t>(c)]++)] = i;
  }
}

void CellGrid::neighborhood(int cell, std::vector<int>& out) const {
  out.clear();
  const int cx = cell % nx_;
  const int cy = (cell / nx_) % ny_;
  const int cz = cell / (nx_ * ny_);
  for (int dz = -1; dz <= 1; ++dz) {
    const int z = cz + dz;
    if (z < 0 || z >= nz_) continue;
    for (int dy = -1; dy <= 1; ++dy) {
      int y = cy + dy;
      if (y < 0) y += ny_;    // periodic wrap
      if (y >= ny_) y -= ny_;
      for (int dx = -1; dx <= 1; ++dx) {
        const int x = cx + dx;
        if (x < 0 || x >= nx_) continue;
        out.push_back((z * ny_ + y) * nx_ + x);
      }
    }
  }
  // ny <= 2 makes wrapped cells coincide; a duplicate cell would emit a pair
  // twice
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace recoat
