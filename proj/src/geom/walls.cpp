#include "geom/walls.hpp"

#include <algorithm>
#include <cmath>

namespace recoat {

WallGap particle_wall_gap(const Vec3& center, double r, const WallState& state,
                          InteractionClass cls) {
  WallGap out;
  out.vel = state.vel;
  out.cls = cls;

  const Vec3 q{std::clamp(center.x, state.lo.x, state.hi.x),
               std::clamp(center.y, state.lo.y, state.hi.y),
               std::clamp(center.z, state.lo.z, state.hi.z)};
  const Vec3 d = center - q;
  const double dist2 = norm2(d);
  if (dist2 > 0.0) {
    // Axis-aligned face offsets keep exact unit normals; a rounded sqrt must
    // not leak a spurious tangential component into flat-face contacts.
    const double ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
    if (ay == 0.0 && az == 0.0) {
      out.gap = ax - r;
      out.normal = {d.x > 0.0 ? 1.0 : -1.0, 0.0, 0.0};
    } else if (ax == 0.0 && az == 0.0) {
      out.gap = ay - r;
      out.normal = {0.0, d.y > 0.0 ? 1.0 : -1.0, 0.0};
    } else if (ax == 0.0 && ay == 0.0) {
      out.gap = az - r;
      out.normal = {0.0, 0.0, d.z > 0.0 ? 1.0 : -1.0};
    } else {
      const double dist = std::sqrt(dist2);
      out.gap = dist - r;
      out.normal = d * (1.0 / dist);
    }
    return out;
  }

  // Center inside the box: push out through the nearest face.
  double depth = state.hi.x - center.x;
  Vec3 n{1.0, 0.0, 0.0};
  if (center.x - state.lo.x < depth) {
    depth = center.x - state.lo.x;
    n = {-1.0, 0.0, 0.0};
  }
  if (state.hi.y - center.y < depth) {
    depth = state.hi.y - center.y;
    n = {0.0, 1.0, 0.0};
  }
  if (center.y - state.lo.y < depth) {
    depth = center.y - state.lo.y;
    n = {0.0, -1.0, 0.0};
  }
  if (state.hi.z - center.z < depth) {
    depth = state.hi.z - center.z;
    n = {0.0, 0.0, 1.0};
  }
  if (center.z - state.lo.z < depth) {
    depth = center.z - state.lo.z;
    n = {0.0, 0.0, -1.0};
  }
  out.gap = -(r + depth);
  out.normal = n;
  return out;
}

}  // namespace recoat
