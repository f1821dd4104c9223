#pragma once

#include <cmath>
#include <vector>

#include "geom/walls.hpp"

namespace recoat {

// Position of the blade front face. Before t_start the blade is parked at x0;
// after t_stop it holds at the stop position.
struct BladeKinematics {
  double x0 = 0.0;      // front face park position
  double speed = 0.0;   // +x traverse speed
  double t_start = 0.0;
  double t_stop = 1e30;
};

double blade_position_at(const BladeKinematics& k, double time);
double blade_velocity_at(const BladeKinematics& k, double time);

// Dosing platform: top face rises from z0 by rise_height at rise_speed,
// starting at t_start.
struct PlatformSchedule {
  double z0 = 0.0;
  double rise_height = 0.0;
  double rise_speed = 0.0;
  double t_start = 0.0;

  double top_at(double time) const {
    if (rise_speed <= 0.0 || rise_height <= 0.0) return z0;
    const double dz = rise_speed * std::max(0.0, time - t_start);
    return z0 + std::min(dz, rise_height);
  }
  double speed_at(double time) const {
    if (rise_speed <= 0.0 || rise_height <= 0.0) return 0.0;
    if (time < t_start) return 0.0;
    return top_at(time) < z0 + rise_height ? rise_speed : 0.0;
  }
  double t_done() const {
    if (rise_speed <= 0.0 || rise_height <= 0.0) return t_start;
    return t_start + rise_height / rise_speed;
  }
};

// Wall set plus the motion bindings that resolve each wall at a query time.
// Stage drivers update the schedules between stages; within an integration
// span the geometry is a pure function of time.
struct ProcessGeometry {
  std::vector<Wall> walls;
  BladeKinematics blade;
  PlatformSchedule platform;
  double guard_off_time = 1e30;

  WallState wall_state(const Wall& w, double time) const;
};

// Periodic wrap into [0, L_y).
double wrap_y(double y, double L_y);

// Minimum-image separation component for the periodic direction.
inline double min_image_dy(double dy, double L_y) {
  return dy - L_y * std::nearbyint(dy / L_y);
}

}  // namespace recoat
