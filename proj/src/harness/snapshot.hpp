#pragma once

#include <span>
#include <string>
#include <vector>

#include "dem/particle.hpp"

namespace recoat {

struct Snapshot {
  double time = 0.0;
  double blade_x = 0.0;
  std::vector<Particle> particles;
};

// Text format: one header line "# t=<s> n=<count> blade_x=<m>", then one
// record per active particle: id,x,y,z,r,vx,vy,vz with 17 significant digits
// so a write-read round trip is bit-identical.
void write_snapshot(const std::string& path, std::span<const Particle> ps,
                    double time, double blade_x);

// Mass and inertia are rebuilt from radius and the given density.
Snapshot read_snapshot(const std::string& path, double rho);

}  // namespace recoat
