#pragma once

#include <cstdint>

#include "dem/simulation.hpp"

namespace recoat {

struct SettleCriterion {
  double speed_threshold = 1e-4;  // m/s, well below blade speeds
  int consecutive = 500;
  int64_t step_cap = 5000000;
};

struct SettleReport {
  bool converged = false;
  int64_t steps = 0;
  double packing_fraction = 0.0;  // pile interior, inset from boundaries
  double final_max_speed = 0.0;
};

// Integrates until the max particle speed stays under the threshold for the
// required consecutive steps. Hitting the step cap flags non-convergence but
// is not fatal. The packing fraction is measured in the pile bounding box
// inset by `inset` in x and z (y is periodic) on a voxel lattice of edge
// delta_v; pass delta_v <= 0 to skip the measurement.
SettleReport settle(Simulation& sim, const SettleCriterion& crit,
                    double delta_v, double inset);

}  // namespace recoat
