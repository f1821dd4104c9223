#pragma once

#include "dem/material.hpp"
#include "dem/particle.hpp"
#include "dem/vec3.hpp"

namespace recoat {

// How a wall box evolves with time. Offsets are resolved by ProcessGeometry;
// the box stored in Wall is the reference shape.
enum class WallMotion {
  fixed,
  blade,         // translates in +x per BladeKinematics
  platform_top,  // top face z follows PlatformSchedule
  guard,         // static box that is deactivated at a set time
};

struct Wall {
  Vec3 lo, hi;  // axis-aligned box; +-1e6 m extents encode half-spaces
  InteractionClass cls = InteractionClass::substrate;
  WallMotion motion = WallMotion::fixed;
  int id = 0;
};

// Wall resolved at a query time: actual box, surface velocity, live flag.
struct WallState {
  Vec3 lo, hi;
  Vec3 vel;
  bool active = true;
};

struct WallGap {
  double gap = 0.0;  // signed, negative = overlap
  Vec3 normal;       // from wall into particle
  Vec3 vel;          // wall surface velocity
  InteractionClass cls = InteractionClass::substrate;
};

// Signed sphere-box distance with outward normal. Centers inside the box get
// the nearest-face normal and gap = -(r + interior depth).
WallGap particle_wall_gap(const Vec3& center, double r, const WallState& state,
                          InteractionClass cls);

}  // namespace recoat
