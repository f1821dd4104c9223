#pragma once

#include "dem/material.hpp"
#include "dem/vec3.hpp"

namespace recoat {

// Explicit-integrator stability bound: 0.2*sqrt(m_min/k_N).
double critical_timestep(const MaterialTable& mat, double m_min);

// d_N = 2*|ln c|*sqrt(k_N*m_eff/(pi^2 + ln^2 c)); makes the linear model's
// restitution exactly c_COR.
double normal_damping(double k_N, double m_eff, double c_COR);

// Inner saturation gap of the regularized vdW law, g0 = sqrt(A/(24*pi*gamma)).
double adhesion_g0(double A, double gamma);

// Maximum tensile (pull-off) force, 4*pi*gamma*r_eff.
double pulloff_force(double gamma, double r_eff);

// Attractive magnitude A*r_eff/(6*s^2), s = max(g, g0); zero beyond 10*g0 or
// when gamma = 0. Returned value is >= 0; it acts along -n on the particle.
double adhesion_magnitude(double gap, double r_eff, double gamma, double A);

// Spring-dashpot normal contact force, k_N*delta + d_N*delta_dot for overlap
// delta = -gap (zero when not overlapping). "repulsive" is the nonneg part
// feeding the Coulomb cap and the rolling torque.
struct NormalForce {
  double total = 0.0;      // signed scalar along the contact normal
  double repulsive = 0.0;  // max(0, spring + dashpot)
};

// vn = relative normal velocity (positive = separating), so delta_dot = -vn.
// For adhesive pairs the net of contact + adhesion is clamped to >= -pulloff;
// dry pairs keep the raw viscous tension so the rebound ratio stays at c_COR.
NormalForce normal_force(double gap, double vn, double m_eff, double r_eff, double gamma,
                         const MaterialTable& mat);

// Incremental tangential spring with Coulomb cap. xi is the stored tangential
// displacement; it is projected onto the current tangent plane, grown by
// vt*dt, and rescaled to the sliding value when the cap binds.
Vec3 tangential_friction_force(Vec3& xi, const Vec3& vt, const Vec3& n, double f_rep, double mu,
                               double k_T, double dt);

// Constant-direction rolling resistance torque, -mu_R*r_eff*f_rep*w_hat, where
// w is the tangent-plane part of the relative angular velocity. Zero below the
// deadband to avoid direction chatter.
Vec3 rolling_resistance_torque(const Vec3& omega_rel, const Vec3& n, double f_rep, double r_eff,
                               double mu_R, double deadband);

}  // namespace recoat
