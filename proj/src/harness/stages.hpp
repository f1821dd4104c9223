#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "harness/config.hpp"
#include "metrics/layer_report.hpp"
#include "powder/settle.hpp"

namespace recoat {

struct RunRecord {
  bool ok = false;
  std::string error;  // set when ok is false

  uint64_t cfg_hash = 0;
  uint64_t seed = 0;
  double gamma_rel = 0.0, gamma = 0.0, gamma_B = 0.0, gamma_W = 0.0;
  double mu_W = 0.0, k_N = 0.0;
  double t0 = 0.0, blade_speed = 0.0;
  int n_particles = 0;
  int n_active_end = 0;
  SettleReport settle_rep;
  double settle_penetration = 0.0;  // max overlap / r_eff at settle end
  bool relax_converged = false;
  int64_t total_steps = 0;
  LayerReport layer;
  double force_ratio_val = 0.0;
};

// Full staged experiment: fill, settle, dose, spread, relax, evaluate.
// Writes resolved.cfg, record.csv, field CSVs, final snapshot, and stage
// timings under cfg.out_dir.
RunRecord run_recoat(const RecoatConfig& cfg);

// Aggregate CSV: header plus one row per record, stable column order, no
// wall-clock values so identical runs produce identical bytes.
std::string record_csv_header();
std::string record_csv_row(const RunRecord& r);
void write_records_csv(const std::string& path,
                       std::span<const RunRecord> records);

}  // namespace recoat
