#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dem/material.hpp"
#include "metrics/layer_report.hpp"
#include "powder/size_distribution.hpp"

namespace recoat {

// Resolved experiment description. Negative sentinels mean "derive from the
// coupled default" and are replaced during resolution.
struct RecoatConfig {
  // material block; gamma values are multiples of gamma0
  double gamma0 = 1e-4;
  double gamma_rel = 1.0;
  double gamma_B_rel = -1.0;  // default: follows gamma_rel
  double gamma_W_rel = -1.0;  // default: follows gamma_rel
  double rho = 4430.0;
  double hamaker = 40e-20;
  double mu = 0.4;
  double mu_W = -1.0;  // default: follows mu
  double mu_R = 0.1;
  double c_COR = 0.4;
  double k_N = -1.0;  // default: 0.05, or 0.2 above gamma0
  double k_T = -1.0;  // default: follows k_N
  double g = 9.81;

  // size distribution block
  double D10 = 20e-6, D50 = 34e-6, D90 = 44e-6;
  double mu_ln = 0.0, sigma_ln = -1.0;  // direct override pair when sigma >= 0

  // geometry block
  double bed_length = 2e-3;
  double bed_width = 0.5e-3;
  double t0_rel = 3.0;    // nominal layer height over d_max0
  double t0_abs = -1.0;   // absolute override
  double wall_width = 1e-4;
  double reservoir_length = 1e-3;
  double blade_thickness = 2e-4;
  double blade_height = 1.5e-3;
  double blade_overshoot = 4e-4;
  double V0 = 0.01;
  double blade_speed_rel = 1.0;
  double blade_speed_abs = -1.0;

  // process block
  double feed_factor = 2.0;      // dosed solid volume over bed_area x t0
  double dwell = 5e-3;           // pause between dose and spread
  double relax_duration = 10e-3;
  double settle_threshold = 1e-4;
  int settle_consecutive = 500;
  int64_t settle_cap = 5000000;
  int64_t relax_quiet_cap = 200000;
  double seed_pitch = 60e-6;
  uint64_t jitter_seed = 1234567;  // fixed across replicates by design

  // metrics block
  double delta_sr = 5e-6;
  double delta_sr_int = 25e-6;
  double delta_pf = 100e-6;
  double delta_v = -1.0;  // default: D10 / 8
  double win_x0 = -1.0, win_x1 = -1.0;  // default: central half of the bed

  // run block
  uint64_t seed = 1;
  double dt = 0.0;  // 0 = 0.9 x critical
  int threads = 1;
  bool deterministic = true;
  std::string out_dir = "out";
  int snapshot_cadence = 0;  // spread-stage snapshots every N steps, 0 = off

  // sweep block; empty list = not swept
  std::vector<double> sweep_gamma_rel;
  std::vector<double> sweep_t0_rel;
  std::vector<double> sweep_speed_rel;
  std::vector<double> sweep_gamma_W_rel;
  std::vector<uint64_t> sweep_seeds;

  // resolution helpers
  MaterialTable resolved_material() const;
  SizeDistribution resolved_distribution() const;
  double resolved_t0() const { return t0_abs > 0.0 ? t0_abs : t0_rel * D90; }
  double resolved_blade_speed() const {
    return blade_speed_abs > 0.0 ? blade_speed_abs : blade_speed_rel * V0;
  }
  double resolved_delta_v() const { return delta_v > 0.0 ? delta_v : D10 / 8.0; }
  double resolved_win_x0() const {
    return win_x0 >= 0.0 ? win_x0 : 0.25 * bed_length;
  }
  double resolved_win_x1() const {
    return win_x1 >= 0.0 ? win_x1 : 0.75 * bed_length;
  }
  MetricGridSpec resolved_metrics() const;
  void validate() const;  // throws ErrorCode::config with the key path
};

// Line-oriented "key = value" format, '#' comments, dotted section paths.
// A "preset" line (desk or full) is applied before all other keys.
RecoatConfig load_config(const std::string& path);
RecoatConfig parse_config_text(const std::string& text);
void apply_key(RecoatConfig& cfg, const std::string& key,
               const std::string& value);
bool get_key(const RecoatConfig& cfg, const std::string& key,
             std::string& value);
void apply_preset(RecoatConfig& cfg, const std::string& name);

// Sorted key=value dump of every registry key; feeds the config hash and the
// resolved-config echo file.
std::string echo_config(const RecoatConfig& cfg);
uint64_t config_hash(const RecoatConfig& cfg);

// One documentation line per key, for --help and the README.
std::string config_key_reference();

}  // namespace recoat
