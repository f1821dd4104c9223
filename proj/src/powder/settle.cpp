#include "powder/settle.hpp"

#include <algorithm>

#include "metrics/packing.hpp"

namespace recoat {

SettleReport settle(Simulation& sim, const SettleCriterion& crit,
                    double delta_v, double inset) {
  SettleReport rep;
  int quiet = 0;
  while (rep.steps < crit.step_cap) {
    sim.step();
    ++rep.steps;
    if (sim.last_stats().max_speed < crit.speed_threshold) {
      if (++quiet >= crit.consecutive) {
        rep.converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  rep.final_max_speed = sim.last_stats().max_speed;

  if (delta_v > 0.0) {
    double lo_x = 1e300, hi_x = -1e300, lo_z = 1e300, hi_z = -1e300;
    for (const Particle& p : sim.particles()) {
      if (!p.active) continue;
      lo_x = std::min(lo_x, p.r_G.x - p.r);
      hi_x = std::max(hi_x, p.r_G.x + p.r);
      lo_z = std::min(lo_z, p.r_G.z - p.r);
      hi_z = std::max(hi_z, p.r_G.z + p.r);
    }
    rep.packing_fraction = box_packing(
        sim.particles(), lo_x + inset, 0.0, lo_z + inset, hi_x - inset,
        sim.params().L_y, hi_z - inset, delta_v, sim.params().L_y);
  }
  return rep;
}

}  // namespace recoat
