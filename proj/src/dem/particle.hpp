#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dem/vec3.hpp"

namespace recoat {

struct Particle {
  std::int64_t id = 0;
  Vec3 r_G;           // center position [m]
  Vec3 v;             // velocity [m/s]
  Vec3 omega;         // angular velocity [rad/s]
  double r = 0.0;     // radius [m]
  double m = 0.0;     // mass [kg]
  double I_G = 0.0;   // moment of inertia [kg m^2]
  Vec3 f;             // accumulated force [N]
  Vec3 tau;           // accumulated torque [N m]
  bool active = true; // false once dropped over the overflow edge
};

inline double mass_from_radius(double r, double rho) {
  return (4.0 / 3.0) * M_PI * r * r * r * rho;
}

inline double inertia_from_mass(double m, double r) { return 0.4 * m * r * r; }

inline Particle make_particle(std::int64_t id, const Vec3& pos, double r, double rho) {
  Particle p;
  p.id = id;
  p.r_G = pos;
  p.r = r;
  p.m = mass_from_radius(r, rho);
  p.I_G = inertia_from_mass(p.m, r);
  return p;
}

// r_eff = r_i*r_j/(r_i+r_j); wall contacts use r_eff = r (see forces.hpp callers).
inline double effective_radius(double r_i, double r_j) { return r_i * r_j / (r_i + r_j); }
inline double effective_mass(double m_i, double m_j) { return m_i * m_j / (m_i + m_j); }

}  // namespace recoat
