#pragma once

#include <vector>

#include "common/rng.hpp"
#include "dem/particle.hpp"
#include "dem/vec3.hpp"

namespace recoat {

struct SeedRegion {
  Vec3 lo, hi;
};

// Places one particle per Cartesian lattice node inside the region, x fastest
// then y then z, with per-axis jitter uniform in [-0.1, 0.1] x pitch to break
// symmetry. Velocities zero, ids sequential from first_id. The 0.8 x pitch
// worst-case node distance must clear the largest diameter, so placements
// never overlap. Throws a capacity error naming the feasible count when the
// region holds fewer nodes than diameters.
std::vector<Particle> seed_lattice(const std::vector<double>& diameters,
                                   const SeedRegion& region, double pitch,
                                   double rho, Rng& jitter_rng,
                                   int64_t first_id = 0);

}  // namespace recoat
