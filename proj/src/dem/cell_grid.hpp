#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dem/particle.hpp"

namespace recoat {

// Linked-cell binning over a fixed axis-aligned domain, periodic in y.
// Cell edges are at least the configured minimum so all pairs within reach
// d_max + g_cut live in adjacent cells.
class CellGrid {
 public:
  // domain_lo/hi bound x and z hard extents; y spans [0, L_y).
  void configure(double cell_edge_min, double lo_x, double hi_x, double lo_z,
                 double hi_z, double L_y);

  // Bins active particles; inactive ones are skipped. Throws when an active
  // particle sits outside the x/z domain, naming its id.
  void build(std::span<const Particle> particles);

  // Candidate pairs (i, j) with i < j as indices into the span passed to
  // build(). Scans the 27-cell neighborhood with duplicate-cell removal so
  // narrow periodic domains do not emit a pair twice.
  template <typename F>
  void for_each_candidate_pair(F&& f) const {
    std::vector<int> neigh;
    neigh.reserve(27);
    const int n = static_cast<int>(cell_of_.size());
    for (int i = 0; i < n; ++i) {
      const int ci = cell_of_[i];
      if (ci < 0) continue;
      neighborhood(ci, neigh);
      for (const int c : neigh) {
        for (int k = start_[c]; k < start_[c + 1]; ++k) {
          const int j = items_[k];
          if (j > i) f(i, j);
        }
      }
    }
  }

  int cell_count() const { return nx_ * ny_ * nz_; }
  double edge_x() const { return ex_; }
  double edge_y() const { return ey_; }
  double edge_z() const { return ez_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }

 private:
  int cell_index(double x, double y, double z) const;
  void neighborhood(int cell, std::vector<int>& out) const;

  double lo_x_ = 0.0, hi_x_ = 0.0, lo_z_ = 0.0, hi_z_ = 0.0, L_y_ = 0.0;
  double ex_ = 0.0, ey_ = 0.0, ez_ = 0.0;
  int nx_ = 0, ny_ = 0, nz_ = 0;
  std::vector<int> start_;    // cell -> first slot in items_, size cells+1
  std::vector<int> items_;    // particle indices grouped by cell
  std::vector<int> cell_of_;  // particle index -> cell, -1 when inactive
};

}  // namespace recoat
