#include "dem/forces.hpp"

#include <cmath>

#include "common/error.hpp"

namespace recoat {

double critical_timestep(const MaterialTable& mat, double m_min) {
  if (m_min <= 0.0 || mat.k_N <= 0.0)
    fail(ErrorCode::invalid_parameter, "critical_timestep: m_min and k_N must be > 0");
  return 0.2 * std::sqrt(m_min / mat.k_N);
}

double normal_damping(double k_N, double m_eff, double c_COR) {
  const double lnc = std::log(c_COR);
  return 2.0 * std::abs(lnc) * std::sqrt(k_N * m_eff / (M_PI * M_PI + lnc * lnc));
}

double adhesion_g0(double A, double gamma) { return std::sqrt(A / (24.0 * M_PI * gamma)); }

double pulloff_force(double gamma, double r_eff) { return 4.0 * M_PI * gamma * r_eff; }

double adhesion_magnitude(double gap, double r_eff, double gamma, double A) {
  if (gamma <= 0.0) return 0.0;
  const double g0 = adhesion_g0(A, gamma);
  if (gap > 10.0 * g0) return 0.0;
  const double s = std::max(gap, g0);
  return A * r_eff / (6.0 * s * s);
}

NormalForce normal_force(double gap, double vn, double m_eff, double r_eff, double gamma,
                         const MaterialTable& mat) {
  NormalForce out;
  double contact = 0.0;
  if (gap < 0.0) {
    const double d_N = normal_damping(mat.k_N, m_eff, mat.c_COR);
    contact = mat.k_N * (-gap) + d_N * (-vn);  // delta = -gap, delta_dot = -vn
    out.repulsive = std::max(0.0, contact);
  }
  const double f_adh = adhesion_magnitude(gap, r_eff, gamma, mat.A);
  out.total = contact - f_adh;
  // adhesive contacts cannot pull harder than the pull-off force; dry contacts
  // keep the raw viscous tension so the rebound ratio stays at c_COR
  if (gamma > 0.0) out.total = std::max(out.total, -pulloff_force(gamma, r_eff));
  return out;
}

Vec3 tangential_friction_force(Vec3& xi, const Vec3& vt, const Vec3& n, double f_rep, double mu,
                               double k_T, double dt) {
  xi -= dot(xi, n) * n;  // keep the spring in the tangent plane
  xi += vt * dt;
  Vec3 f = -k_T * xi;
  const double cap = mu * f_rep;
  const double mag = norm(f);
  if (mag > cap) {
    f = (cap > 0.0 && mag > 0.0) ? f * (cap / mag) : Vec3{};
    xi = (k_T > 0.0) ? -1.0 / k_T * f : Vec3{};
  }
  return f;
}

Vec3 rolling_resistance_torque(const Vec3& omega_rel, const Vec3& n, double f_rep, double r_eff,
                               double mu_R, double deadband) {
  if (mu_R <= 0.0 || f_rep <= 0.0) return {};
  Vec3 w = omega_rel - dot(omega_rel, n) * n;  // rolling part, twist excluded
  const double wn = norm(w);
  if (wn <= deadband) return {};
  return w * (-mu_R * r_eff * f_rep / wn);
}

}  // namespace recoat
