#pragma once

#include <span>

#include "dem/particle.hpp"
#include "metrics/field2d.hpp"

namespace recoat {

struct SurfaceWindow {
  double x0 = 0.0, x1 = 0.0;  // evaluation rectangle
  double y0 = 0.0, y1 = 0.0;
  double substrate_z = 0.0;   // value for rays that hit nothing
  double L_y = 0.0;           // periodic width, 0 = non-periodic
};

// Vertical-ray surface sampling on a pitch-delta grid: each ray takes the
// maximal upper sphere-intersection z over all particles it pierces, or the
// substrate height when it pierces none.
ScalarField2D surface_profile_raw(std::span<const Particle> particles,
                                  const SurfaceWindow& win, double delta_sr);

// Max filter onto a coarser grid whose pitch is factor x the raw pitch;
// factor must tile the raw field exactly.
ScalarField2D surface_profile_filtered(const ScalarField2D& raw, int factor);

}  // namespace recoat
