#pragma once

#include <span>
#include <string>
#include <vector>

#include "dem/particle.hpp"
#include "metrics/field2d.hpp"
#include "metrics/packing.hpp"

namespace recoat {

struct MetricGridSpec {
  double delta_sr = 5e-6;       // surface ray pitch
  double delta_sr_int = 25e-6;  // max-filter segment size
  double delta_pf = 100e-6;     // packing bin size
  double delta_v = 2.5e-6;      // voxel edge
  double win_x0 = 0.0, win_x1 = 0.0;  // evaluation window
  double win_y0 = 0.0, win_y1 = 0.0;
  double L_y = 0.0;
  double substrate_z = 0.0;

  void validate(double d_min) const;
};

struct SublayerEntry {
  double z_lo = 0.0, z_hi = 0.0;
  double phi = 0.0;
};

struct LayerReport {
  double mean_phi_t = 0.0;   // <packing fraction at measured height>
  double std_phi_t = 0.0;
  double mean_phi_t0 = 0.0;  // referenced to the nominal layer height
  double std_phi_t0 = 0.0;
  double t = 0.0;            // mean filtered surface height
  double std_z_int = 0.0;
  double t_over_t0 = 0.0;
  double roughness_norm = 0.0;  // std(z_int) / d_max0
  std::vector<SublayerEntry> sublayers;
};

// Full layer characterization: filtered surface field, packing fields at both
// reference heights, and sublayer slabs of thickness d_max0 up to t0.
LayerReport layer_report(std::span<const Particle> particles,
                         const MetricGridSpec& spec, double t0, double d_max0);

// Surface fields used by the report; exposed for field CSV export.
ScalarField2D layer_surface_raw(std::span<const Particle> particles,
                                const MetricGridSpec& spec);
ScalarField2D layer_surface_filtered(std::span<const Particle> particles,
                                     const MetricGridSpec& spec);
ScalarField2D layer_packing_field(std::span<const Particle> particles,
                                  const MetricGridSpec& spec, double h);

// Adhesion pull-off of two mean-size particles over single-particle weight.
double force_ratio(double gamma, double d_bar, double rho, double g_mag);

}  // namespace recoat
