#include "recoat/recoat.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <string>

#include "common/error.hpp"
#include "dem/forces.hpp"
#include "dem/material.hpp"
#include "harness/config.hpp"
#include "harness/snapshot.hpp"
#include "harness/stages.hpp"
#include "harness/sweep.hpp"
#include "metrics/layer_report.hpp"

using recoat::Error;
using recoat::ErrorCode;
using recoat::RecoatConfig;

struct recoat_config {
  RecoatConfig cfg;
};

namespace {

thread_local std::string g_last_error;

recoat_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::config:
      return RECOAT_ERR_CONFIG;
    case ErrorCode::runtime:
      return RECOAT_ERR_RUNTIME;
    case ErrorCode::partial:
      return RECOAT_ERR_PARTIAL;
    case ErrorCode::invalid_parameter:
      return RECOAT_ERR_INVALID;
    case ErrorCode::io:
      return RECOAT_ERR_IO;
  }
  return RECOAT_ERR_RUNTIME;
}

template <typename F>
recoat_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return RECOAT_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RECOAT_ERR_RUNTIME;
  }
}

void fill_report(const recoat::RunRecord& rec, recoat_report* out) {
  if (!out) return;
  std::memset(out, 0, sizeof *out);
  out->phi_t_mean = rec.layer.mean_phi_t;
  out->phi_t_std = rec.layer.std_phi_t;
  out->phi_t0_mean = rec.layer.mean_phi_t0;
  out->phi_t0_std = rec.layer.std_phi_t0;
  out->t = rec.layer.t;
  out->std_z_int = rec.layer.std_z_int;
  out->t_over_t0 = rec.layer.t_over_t0;
  out->roughness_norm = rec.layer.roughness_norm;
  out->n_sublayers = 0;
  for (const recoat::SublayerEntry& e : rec.layer.sublayers) {
    if (out->n_sublayers >= 8) break;
    out->sublayer_phi[out->n_sublayers++] = e.phi;
  }
  out->settle_packing = rec.settle_rep.packing_fraction;
  out->settle_penetration = rec.settle_penetration;
  out->settle_steps = rec.settle_rep.steps;
  out->settle_converged = rec.settle_rep.converged ? 1 : 0;
  out->relax_converged = rec.relax_converged ? 1 : 0;
  out->total_steps = rec.total_steps;
  out->n_particles = rec.n_particles;
  out->n_active_end = rec.n_active_end;
  out->force_ratio = rec.force_ratio_val;
}

}  // namespace

extern "C" {

recoat_config* recoat_config_default(void) { return new recoat_config{}; }

recoat_config* recoat_config_load(const char* path, recoat_status* status) {
  recoat_config* out = nullptr;
  const recoat_status st = guarded([&] {
    if (!path) recoat::fail(ErrorCode::invalid_parameter, "null path");
    out = new recoat_config{recoat::load_config(path)};
  });
  if (status) *status = st;
  return out;
}

recoat_status recoat_config_set(recoat_config* cfg, const char* key,
                                const char* value) {
  return guarded([&] {
    if (!cfg || !key || !value)
      recoat::fail(ErrorCode::invalid_parameter, "null argument");
    recoat::apply_key(cfg->cfg, key, value);
  });
}

recoat_status recoat_config_get(const recoat_config* cfg, const char* key,
                                char* buf, size_t buflen) {
  return guarded([&] {
    if (!cfg || !key || !buf)
      recoat::fail(ErrorCode::invalid_parameter, "null argument");
    std::string v;
    if (!recoat::get_key(cfg->cfg, key, v))
      recoat::fail(ErrorCode::invalid_parameter,
                   std::string("unknown key '") + key + "'");
    if (v.size() + 1 > buflen)
      recoat::fail(ErrorCode::invalid_parameter, "buffer too small");
    std::memcpy(buf, v.c_str(), v.size() + 1);
  });
}

recoat_status recoat_config_validate(const recoat_config* cfg) {
  return guarded([&] {
    if (!cfg) recoat::fail(ErrorCode::invalid_parameter, "null config");
    cfg->cfg.validate();
  });
}

uint64_t recoat_config_hash(const recoat_config* cfg) {
  return cfg ? recoat::config_hash(cfg->cfg) : 0;
}

void recoat_config_free(recoat_config* cfg) { delete cfg; }

recoat_status recoat_run(const recoat_config* cfg, recoat_report* out) {
  return guarded([&] {
    if (!cfg) recoat::fail(ErrorCode::invalid_parameter, "null config");
    const recoat::RunRecord rec = recoat::run_recoat(cfg->cfg);
    fill_report(rec, out);
  });
}

recoat_status recoat_sweep(const recoat_config* cfg) {
  return guarded([&] {
    if (!cfg) recoat::fail(ErrorCode::invalid_parameter, "null config");
    const recoat::SweepResult res = recoat::run_sweep(cfg->cfg);
    if (res.any_failed)
      recoat::fail(ErrorCode::partial, "some sweep runs failed; see sweep.csv");
  });
}

recoat_status recoat_metrics_from_snapshot(const recoat_config* cfg,
                                           const char* snapshot_path,
                                           recoat_report* out) {
  return guarded([&] {
    if (!cfg || !snapshot_path)
      recoat::fail(ErrorCode::invalid_parameter, "null argument");
    const recoat::Snapshot snap =
        recoat::read_snapshot(snapshot_path, cfg->cfg.rho);
    const recoat::MetricGridSpec spec = cfg->cfg.resolved_metrics();
    recoat::RunRecord rec;
    rec.layer = recoat::layer_report(snap.particles, spec,
                                     cfg->cfg.resolved_t0(), cfg->cfg.D90);
    rec.n_particles = static_cast<int>(snap.particles.size());
    rec.n_active_end = rec.n_particles;
    const recoat::MaterialTable mat = cfg->cfg.resolved_material();
    rec.force_ratio_val =
        recoat::force_ratio(mat.gamma, cfg->cfg.D50, cfg->cfg.rho, cfg->cfg.g);
    fill_report(rec, out);
  });
}

double recoat_force_ratio(double gamma, double d_bar, double rho, double g) {
  double v = std::numeric_limits<double>::quiet_NaN();
  guarded([&] { v = recoat::force_ratio(gamma, d_bar, rho, g); });
  return v;
}

double recoat_critical_timestep(double m_min, double k_N) {
  double v = std::numeric_limits<double>::quiet_NaN();
  guarded([&] {
    recoat::MaterialTable mat;
    mat.k_N = k_N;
    v = recoat::critical_timestep(mat, m_min);
  });
  return v;
}

double recoat_pulloff_force(double gamma, double r_eff) {
  double v = std::numeric_limits<double>::quiet_NaN();
  guarded([&] {
    if (gamma < 0.0 || r_eff <= 0.0)
      recoat::fail(ErrorCode::invalid_parameter, "bad pull-off inputs");
    v = recoat::pulloff_force(gamma, r_eff);
  });
  return v;
}

const char* recoat_last_error(void) { return g_last_error.c_str(); }

const char* recoat_version(void) { return "1.0.0"; }

const char* recoat_config_keys(void) {
  static const std::string keys = recoat::config_key_reference();
  return keys.c_str();
}

}  // extern "C"
