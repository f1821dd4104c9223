#include "geom/process.hpp"

#include <algorithm>
#include <cmath>

namespace recoat {

double blade_position_at(const BladeKinematics& k, double time) {
  const double t = std::clamp(time, k.t_start, k.t_stop);
  return k.x0 + k.speed * (t - k.t_start);
}

double blade_velocity_at(const BladeKinematics& k, double time) {
  if (time < k.t_start || time >= k.t_stop) return 0.0;
  return k.speed;
}

WallState ProcessGeometry::wall_state(const Wall& w, double time) const {
  WallState s;
  s.lo = w.lo;
  s.hi = w.hi;
  s.vel = {0.0, 0.0, 0.0};
  s.active = true;
  switch (w.motion) {
    case WallMotion::fixed:
      break;
    case WallMotion::blade: {
      const double dx = blade_position_at(blade, time) - blade.x0;
      s.lo.x += dx;
      s.hi.x += dx;
      s.vel = {blade_velocity_at(blade, time), 0.0, 0.0};
      break;
    }
    case WallMotion::platform_top:
      s.hi.z = platform.top_at(time);
      s.vel = {0.0, 0.0, platform.speed_at(time)};
      break;
    case WallMotion::guard:
      s.active = time < guard_off_time;
      break;
  }
  return s;
}

double wrap_y(double y, double L_y) {
  double w = y - L_y * std::floor(y / L_y);
  // floor rounding can land exactly on L_y when y is a tiny negative number
  if (w >= L_y) w -= L_y;
  if (w < 0.0) w = 0.0;
  return w;
}

}  // namespace recoat
