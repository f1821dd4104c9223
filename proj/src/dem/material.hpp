#pragma once

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "dem/vec3.hpp"

namespace recoat {

// Interaction class of the counter-body seen by a particle. Selects the
// (surface energy, friction) pair: particle->(gamma, mu), blade->(gamma_B, mu),
// substrate/side-wall/platform->(gamma_W, mu_W).
enum class InteractionClass { particle = 0, blade = 1, substrate = 2 };

struct MaterialTable {
  double rho = 4430.0;          // kg/m^3
  Vec3 g = {0.0, 0.0, -9.81};   // m/s^2
  double gamma = 1e-4;          // J/m^2, particle-particle
  double gamma_B = 1e-4;        // J/m^2, particle-blade
  double gamma_W = 1e-4;        // J/m^2, particle-substrate/wall
  double A = 40e-20;            // J, Hamaker constant
  double k_N = 0.05;            // N/m
  double k_T = 0.05;            // N/m
  double mu = 0.4;              // particle-particle friction
  double mu_W = 0.4;            // particle-wall friction
  double mu_R = 0.1;            // rolling-resistance coefficient
  double c_COR = 0.4;           // coefficient of restitution
  double g_cut = 0.0;           // m, adhesion cutoff gap (broadphase reach), see finalize()

  double gamma_for(InteractionClass cls) const {
    switch (cls) {
      case InteractionClass::blade: return gamma_B;
      case InteractionClass::substrate: return gamma_W;
      default: return gamma;
    }
  }
  double mu_for(InteractionClass cls) const {
    return cls == InteractionClass::substrate ? mu_W : mu;
  }

  // g_cut must cover the widest-reaching adhesive class.
  void finalize() {
    const double gmax = std::max({gamma, gamma_B, gamma_W});
    g_cut = gmax > 0.0 ? 10.0 * std::sqrt(A / (24.0 * M_PI * gmax)) : 0.0;
  }

  void validate() const {
    if (rho <= 0.0) fail(ErrorCode::invalid_parameter, "material: density must be > 0");
    if (k_N <= 0.0) fail(ErrorCode::invalid_parameter, "material: k_N must be > 0");
    if (k_T < 0.0) fail(ErrorCode::invalid_parameter, "material: k_T must be >= 0");
    if (c_COR <= 0.0 || c_COR > 1.0)
      fail(ErrorCode::invalid_parameter, "material: c_COR must be in (0, 1]");
    if (gamma < 0.0 || gamma_B < 0.0 || gamma_W < 0.0 || A < 0.0 || mu < 0.0 || mu_W < 0.0 ||
        mu_R < 0.0)
      fail(ErrorCode::invalid_parameter, "material: negative coefficient");
  }
};

}  // namespace recoat
