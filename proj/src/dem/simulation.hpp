#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dem/cell_grid.hpp"
#include "dem/contact_table.hpp"
#include "dem/forces.hpp"
#include "dem/material.hpp"
#include "dem/particle.hpp"
#include "geom/process.hpp"

namespace recoat {

struct SimParams {
  double dt = 0.0;  // 0 = pick 0.9 x critical automatically
  double L_y = 0.0;
  double domain_lo_x = 0.0, domain_hi_x = 0.0;
  double domain_lo_z = 0.0, domain_hi_z = 0.0;
  double skin = 4e-6;               // Verlet list slack, rebuild at half
  double rolling_deadband = 1e-4;   // rad/s
  bool gravity_on = true;
  // Particles past the overflow edge below kill_z are deactivated; past
  // kill_x_max they have left the table and cannot return.
  double kill_x_min = 1e30;
  double kill_z = -1e-3;
  double kill_x_max = 1e30;
  int force_threads = 1;  // >1 enables the opt-in parallel force pass
  bool allow_unstable_dt = false;
  int compact_interval = 2048;
};

struct StepStats {
  double max_speed = 0.0;            // active particles, after the step
  double max_rel_penetration = 0.0;  // max over contacts of overlap / r_eff
  int64_t pair_checks = 0;
  int64_t contacts = 0;
  int active_count = 0;
};

// Soft-sphere discrete-element integrator: velocity Verlet over spheres with
// translational and rotational state, periodic in y, walls from a
// time-resolved process geometry.
class Simulation {
 public:
  Simulation(MaterialTable mat, ProcessGeometry geom, SimParams params,
             std::vector<Particle> particles);

  void step();
  void advance(double duration);  // whole steps covering at least duration

  double time() const { return time_; }
  uint32_t step_count() const { return step_; }
  double dt() const { return params_.dt; }
  const std::vector<Particle>& particles() const { return particles_; }
  std::vector<Particle>& particles_mut() { return particles_; }
  const MaterialTable& material() const { return mat_; }
  ProcessGeometry& geometry() { return geom_; }
  const SimParams& params() const { return params_; }
  const StepStats& last_stats() const { return stats_; }
  double min_particle_mass() const { return m_min_; }

  // Force refresh after external state edits (seeding more particles,
  // changing schedules); also rebuilds the neighbor list.
  void invalidate();

 private:
  void compute_forces();
  void eval_pairs(std::span<const std::pair<int, int>> pairs,
                  std::vector<Vec3>& force, std::vector<Vec3>& torque,
                  StepStats& st);
  void eval_walls(int begin, int end, std::vector<Vec3>& force,
                  std::vector<Vec3>& torque, StepStats& st);
  void rebuild_neighbors();
  bool neighbors_stale() const;

  MaterialTable mat_;
  ProcessGeometry geom_;
  SimParams params_;
  std::vector<Particle> particles_;
  CellGrid grid_;
  ContactTable contacts_;
  std::vector<std::pair<int, int>> nlist_;
  std::vector<Vec3> ref_pos_;
  std::vector<WallState> wall_states_;
  double g_cut_[3] = {0.0, 0.0, 0.0};  // per interaction class
  double time_ = 0.0;
  uint32_t step_ = 0;
  double m_min_ = 0.0;
  double reach_max_ = 0.0;  // 2 r_max + g_cut
  bool forces_valid_ = false;
  StepStats stats_;
};

}  // namespace recoat
