#include "harness/stages.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "common/error.hpp"
#include "common/rng.hpp"
#include "dem/simulation.hpp"
#include "harness/snapshot.hpp"
#include "powder/seeding.hpp"

namespace recoat {

namespace {

constexpr double kBig = 1.0;      // half-space extent stand-in
constexpr double kLip = 1e-5;     // solid overlap sealing wall joints
constexpr int kRelaxQuiet = 100;  // consecutive quiet steps ending relax

struct StageClock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double lap() {
    const auto t1 = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(t1 - t0).count();
    t0 = t1;
    return s;
  }
};

ProcessGeometry build_geometry(const RecoatConfig& cfg) {
  const double w = cfg.wall_width;
  const double L_x = cfg.bed_length;
  const double L_res = cfg.reservoir_length;
  const double t0 = cfg.resolved_t0();
  const double x_res = -(w + L_res);  // reservoir left edge

  ProcessGeometry g;
  auto add = [&g](Vec3 lo, Vec3 hi, InteractionClass cls, WallMotion motion) {
    Wall wl;
    wl.lo = lo;
    wl.hi = hi;
    wl.cls = cls;
    wl.motion = motion;
    wl.id = static_cast<int>(g.walls.size());
    g.walls.push_back(wl);
  };
  // substrate under the bed only; the overflow region beyond the end wall
  // has no floor
  add({0.0, -kBig, -kBig}, {L_x, kBig, 0.0}, InteractionClass::substrate,
      WallMotion::fixed);
  // separating wall between reservoir and bed, top at the blade gap plane
  add({-w, -kBig, -kBig}, {0.0, kBig, t0}, InteractionClass::substrate,
      WallMotion::fixed);
  // guard above the separating wall keeps the raining fill inside the
  // reservoir; removed when the spread starts
  add({-w, -kBig, t0}, {0.0, kBig, kBig}, InteractionClass::substrate,
      WallMotion::guard);
  // outer wall closing the reservoir on the left, full height
  add({-kBig, -kBig, -kBig}, {x_res, kBig, kBig}, InteractionClass::substrate,
      WallMotion::fixed);
  // dosing platform, slight overlap into both side walls seals the joints
  add({x_res - kLip, -kBig, -kBig}, {-w + kLip, kBig, 0.0},
      InteractionClass::substrate, WallMotion::platform_top);
  // end wall; powder pushed past it falls off the overflow edge
  add({L_x, -kBig, -kBig}, {L_x + w, kBig, t0}, InteractionClass::substrate,
      WallMotion::fixed);
  // blade parked with its front face at the reservoir left edge
  add({x_res - cfg.blade_thickness, -kBig, t0},
      {x_res, kBig, t0 + cfg.blade_height}, InteractionClass::blade,
      WallMotion::blade);

  g.blade.x0 = x_res;
  g.blade.speed = 0.0;
  g.blade.t_start = 0.0;
  g.blade.t_stop = 0.0;
  g.platform.z0 = 0.0;
  g.platform.rise_height = 0.0;
  g.guard_off_time = 1e30;
  return g;
}

std::vector<Particle> seed_fill(const RecoatConfig& cfg, double v_target,
                                double& seed_top) {
  Rng diameter_rng(cfg.seed);
  const SizeDistribution dist = cfg.resolved_distribution();
  std::vector<double> diameters;
  double solid = 0.0;
  while (solid < v_target) {
    if (diameters.size() > 2000000)
      fail(ErrorCode::runtime, "fill: particle count out of range");
    const double d =
        sample_diameters(dist, 1, diameter_rng).front();
    diameters.push_back(d);
    solid += (M_PI / 6.0) * d * d * d;
  }

  const double w = cfg.wall_width;
  const double pitch = cfg.seed_pitch;
  const double clear = 5e-6;
  SeedRegion region;
  region.lo = {-(w + cfg.reservoir_length) + clear, 0.0, clear};
  region.hi = {-w - clear, cfg.bed_width, 0.0};
  const int nx = std::max(
      1, static_cast<int>(std::floor((region.hi.x - region.lo.x) / pitch)));
  const int ny = std::max(
      1, static_cast<int>(std::floor(cfg.bed_width / pitch)));
  const auto rows = static_cast<double>(
      (diameters.size() + static_cast<size_t>(nx) * ny - 1) /
      (static_cast<size_t>(nx) * ny));
  region.hi.z = region.lo.z + (rows + 2.0) * pitch;

  Rng jitter_rng(cfg.jitter_seed);
  std::vector<Particle> ps =
      seed_lattice(diameters, region, pitch, cfg.rho, jitter_rng, 0);
  seed_top = 0.0;
  for (const Particle& p : ps) seed_top = std::max(seed_top, p.r_G.z + p.r);
  return ps;
}

void write_timings(const std::string& path, const double* secs,
                   const char* const* names, int n) {
  std::ofstream os(path);
  for (int i = 0; i < n; ++i)
    os << names[i] << " = " << secs[i] << " s\n";
}

}  // namespace

RunRecord run_recoat(const RecoatConfig& cfg) {
  cfg.validate();
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  {
    std::ofstream os(cfg.out_dir + "/resolved.cfg");
    if (!os) fail(ErrorCode::io, "cannot write " + cfg.out_dir);
    os << echo_config(cfg);
  }

  RunRecord rec;
  rec.cfg_hash = config_hash(cfg);
  rec.seed = cfg.seed;
  const MaterialTable mat = cfg.resolved_material();
  const double t0 = cfg.resolved_t0();
  const double V_B = cfg.resolved_blade_speed();
  rec.gamma_rel = cfg.gamma_rel;
  rec.gamma = mat.gamma;
  rec.gamma_B = mat.gamma_B;
  rec.gamma_W = mat.gamma_W;
  rec.mu_W = mat.mu_W;
  rec.k_N = mat.k_N;
  rec.t0 = t0;
  rec.blade_speed = V_B;
  rec.force_ratio_val = force_ratio(mat.gamma, cfg.D50, cfg.rho, cfg.g);

  StageClock clock;
  double stage_secs[6] = {0, 0, 0, 0, 0, 0};
  static const char* const stage_names[6] = {"fill",   "settle", "dose",
                                             "spread", "relax",  "evaluate"};

  // fill: rain a lattice block into the reservoir
  const double v_disp =
      cfg.feed_factor * cfg.bed_length * cfg.bed_width * t0;
  double seed_top = 0.0;
  std::vector<Particle> ps = seed_fill(cfg, v_disp, seed_top);
  rec.n_particles = static_cast<int>(ps.size());

  SimParams sp;
  sp.dt = cfg.dt;
  sp.L_y = cfg.bed_width;
  sp.domain_lo_x =
      -(cfg.wall_width + cfg.reservoir_length + cfg.blade_thickness) - 3e-4;
  sp.domain_hi_x =
      cfg.bed_length + cfg.wall_width + cfg.blade_overshoot + 2e-3;
  sp.domain_lo_z = -1.2e-3;
  // blade pinch ejections reach a few times V_B; headroom holds the apex
  sp.domain_hi_z =
      seed_top + 2e-3 + (4.0 * V_B) * (4.0 * V_B) / (2.0 * cfg.g);
  sp.kill_x_min = cfg.bed_length + cfg.wall_width;
  sp.kill_z = -1e-3;
  // past the overshoot the powder has left the table and cannot return
  sp.kill_x_max =
      cfg.bed_length + cfg.wall_width + cfg.blade_overshoot + 1e-3;
  sp.force_threads = cfg.deterministic ? 1 : std::max(1, cfg.threads);

  Simulation sim(mat, build_geometry(cfg), sp, std::move(ps));
  stage_secs[0] = clock.lap();

  // settle under gravity until quiet
  SettleCriterion crit;
  crit.speed_threshold = cfg.settle_threshold;
  crit.consecutive = cfg.settle_consecutive;
  crit.step_cap = cfg.settle_cap;
  rec.settle_rep = settle(sim, crit, cfg.resolved_delta_v(), cfg.D90);
  rec.settle_penetration = sim.last_stats().max_rel_penetration;
  stage_secs[1] = clock.lap();

  // dose: raise the platform until the powder above the gap plane holds the
  // feed volume, then dwell
  double pile_top = 0.0;
  for (const Particle& p : sim.particles())
    if (p.active) pile_top = std::max(pile_top, p.r_G.z + p.r);
  const double phi_meas = std::max(rec.settle_rep.packing_fraction, 0.3);
  const double a_res = cfg.reservoir_length * cfg.bed_width;
  const double rise =
      std::max(0.0, (t0 - pile_top) + v_disp / (phi_meas * a_res));
  if (pile_top + rise > t0 + cfg.blade_height)
    fail(ErrorCode::runtime, "dose: feed volume overflows the blade height");
  if (rise > 0.0) {
    sim.geometry().platform.z0 = 0.0;
    sim.geometry().platform.rise_height = rise;
    sim.geometry().platform.rise_speed = cfg.V0;
    sim.geometry().platform.t_start = sim.time();
    sim.advance(rise / cfg.V0);
  }
  if (cfg.dwell > 0.0) sim.advance(cfg.dwell);
  stage_secs[2] = clock.lap();

  // spread: drop the guard, drive the blade across the bed plus overshoot
  const double x_target =
      cfg.bed_length + cfg.wall_width + cfg.blade_overshoot;
  const double travel = x_target - sim.geometry().blade.x0;
  sim.geometry().guard_off_time = sim.time();
  sim.geometry().blade.speed = V_B;
  sim.geometry().blade.t_start = sim.time();
  sim.geometry().blade.t_stop = sim.time() + travel / V_B;
  if (cfg.snapshot_cadence > 0) {
    const auto n_steps =
        static_cast<int64_t>(std::ceil(travel / V_B / sim.dt() - 1e-9));
    for (int64_t k = 0; k < n_steps; ++k) {
      sim.step();
      if (k % cfg.snapshot_cadence == 0)
        write_snapshot(cfg.out_dir + "/spread_" + std::to_string(k) + ".snap",
                       sim.particles(), sim.time(),
                       blade_position_at(sim.geometry().blade, sim.time()));
    }
  } else {
    sim.advance(travel / V_B);
  }
  stage_secs[3] = clock.lap();

  // relax, then require quiet before evaluating
  if (cfg.relax_duration > 0.0) sim.advance(cfg.relax_duration);
  int quiet = 0;
  int64_t extra = 0;
  while (quiet < kRelaxQuiet && extra < cfg.relax_quiet_cap) {
    if (sim.last_stats().max_speed < cfg.settle_threshold)
      ++quiet;
    else
      quiet = 0;
    if (quiet >= kRelaxQuiet) break;
    sim.step();
    ++extra;
  }
  rec.relax_converged = quiet >= kRelaxQuiet;
  stage_secs[4] = clock.lap();

  // evaluate
  const MetricGridSpec spec = cfg.resolved_metrics();
  rec.layer = layer_report(sim.particles(), spec, t0, cfg.D90);
  rec.total_steps = sim.step_count();
  rec.n_active_end = sim.last_stats().active_count;
  rec.ok = true;

  write_field_csv_file(cfg.out_dir + "/z_int.csv",
                       layer_surface_filtered(sim.particles(), spec));
  write_field_csv_file(cfg.out_dir + "/phi_t0.csv",
                       layer_packing_field(sim.particles(), spec, t0));
  if (rec.layer.t > spec.delta_v)
    write_field_csv_file(cfg.out_dir + "/phi_t.csv",
                         layer_packing_field(sim.particles(), spec,
                                             rec.layer.t));
  write_snapshot(cfg.out_dir + "/final.snap", sim.particles(), sim.time(),
                 blade_position_at(sim.geometry().blade, sim.time()));
  write_records_csv(cfg.out_dir + "/record.csv", {&rec, 1});
  stage_secs[5] = clock.lap();
  write_timings(cfg.out_dir + "/timings.txt", stage_secs, stage_names, 6);
  return rec;
}

std::string record_csv_header() {
  return "status,error,config_hash,seed,gamma_rel,gamma,gamma_B,gamma_W,mu_W,"
         "k_N,t0,blade_speed,n_particles,n_active_end,settle_converged,"
         "settle_steps,settle_packing,settle_penetration,relax_converged,"
         "total_steps,phi_t_mean,phi_t_std,phi_t0_mean,phi_t0_std,t,"
         "std_z_int,t_over_t0,roughness_norm,force_ratio,sub_phi_0,sub_phi_1,"
         "sub_phi_2,sub_phi_3";
}

std::string record_csv_row(const RunRecord& r) {
  char buf[64];
  std::string s;
  auto add_str = [&s](const std::string& v) {
    s += v;
    s += ',';
  };
  auto add_d = [&s, &buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    s += buf;
    s += ',';
  };
  auto add_i = [&s](int64_t v) {
    s += std::to_string(v);
    s += ',';
  };
  add_str(r.ok ? "ok" : "error");
  std::string msg = r.error;
  for (char& c : msg)
    if (c == ',' || c == '\n') c = ';';
  add_str(msg);
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(r.cfg_hash));
  add_str(buf);
  add_i(static_cast<int64_t>(r.seed));
  add_d(r.gamma_rel);
  add_d(r.gamma);
  add_d(r.gamma_B);
  add_d(r.gamma_W);
  add_d(r.mu_W);
  add_d(r.k_N);
  add_d(r.t0);
  add_d(r.blade_speed);
  add_i(r.n_particles);
  add_i(r.n_active_end);
  add_i(r.settle_rep.converged ? 1 : 0);
  add_i(r.settle_rep.steps);
  add_d(r.settle_rep.packing_fraction);
  add_d(r.settle_penetration);
  add_i(r.relax_converged ? 1 : 0);
  add_i(r.total_steps);
  add_d(r.layer.mean_phi_t);
  add_d(r.layer.std_phi_t);
  add_d(r.layer.mean_phi_t0);
  add_d(r.layer.std_phi_t0);
  add_d(r.layer.t);
  add_d(r.layer.std_z_int);
  add_d(r.layer.t_over_t0);
  add_d(r.layer.roughness_norm);
  add_d(r.force_ratio_val);
  for (size_t i = 0; i < 4; ++i) {
    if (i < r.layer.sublayers.size()) {
      std::snprintf(buf, sizeof buf, "%.17g", r.layer.sublayers[i].phi);
      s += buf;
    }
    if (i + 1 < 4) s += ',';
  }
  return s;
}

void write_records_csv(const std::string& path,
                       std::span<const RunRecord> records) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::io, "cannot write " + path);
  os << record_csv_header() << "\n";
  for (const RunRecord& r : records) os << record_csv_row(r) << "\n";
  os.flush();
  if (!os) fail(ErrorCode::io, "write failed for " + path);
}

}  // namespace recoat
