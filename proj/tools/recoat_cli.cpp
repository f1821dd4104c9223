#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "recoat/recoat.h"

namespace {

int exit_code_of(recoat_status st) {
  switch (st) {
    case RECOAT_OK:
      return 0;
    case RECOAT_ERR_CONFIG:
      return 1;
    case RECOAT_ERR_PARTIAL:
      return 3;
    default:
      return 2;
  }
}

struct ConfigDeleter {
  void operator()(recoat_config* c) const { recoat_config_free(c); }
};
using ConfigPtr = std::unique_ptr<recoat_config, ConfigDeleter>;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  int threads = 0;
  bool deterministic = true;
  bool no_deterministic = false;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool config_required) {
  cmd->add_option("--config", o.config_path, "configuration file")
      ->required(config_required);
  cmd->add_option("--out", o.out_dir, "output directory override");
  cmd->add_option("--seed", o.seed, "diameter-sampling seed override");
  cmd->add_option("--threads", o.threads, "worker thread override");
  cmd->add_flag("--deterministic", o.deterministic,
                "sequential-deterministic forces (default)");
  cmd->add_flag("--no-deterministic", o.no_deterministic,
                "allow threaded force evaluation");
  cmd->add_option("--set", o.sets, "extra key=value overrides")
      ->type_name("KEY=VALUE");
}

int fail_with(recoat_status st) {
  std::fprintf(stderr, "error: %s\n", recoat_last_error());
  return exit_code_of(st);
}

ConfigPtr make_config(const CommonOpts& o, recoat_status& st) {
  ConfigPtr cfg;
  if (!o.config_path.empty()) {
    cfg.reset(recoat_config_load(o.config_path.c_str(), &st));
    if (!cfg) return cfg;
  } else {
    cfg.reset(recoat_config_default());
  }
  auto set = [&](const char* key, const std::string& value) {
    if (st == RECOAT_OK) st = recoat_config_set(cfg.get(), key, value.c_str());
  };
  st = RECOAT_OK;
  if (!o.out_dir.empty()) set("run.out_dir", o.out_dir);
  if (o.seed >= 0) set("run.seed", std::to_string(o.seed));
  if (o.threads > 0) set("run.threads", std::to_string(o.threads));
  if (o.no_deterministic) set("run.deterministic", "false");
  for (const std::string& kv : o.sets) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      st = RECOAT_ERR_CONFIG;
      std::fprintf(stderr, "error: --set needs KEY=VALUE, got '%s'\n",
                   kv.c_str());
      return cfg;
    }
    set(kv.substr(0, eq).c_str(), kv.substr(eq + 1));
  }
  if (st == RECOAT_OK) st = recoat_config_validate(cfg.get());
  return cfg;
}

void print_report(const recoat_report& r) {
  std::printf("phi_t_mean = %.6g\n", r.phi_t_mean);
  std::printf("phi_t_std = %.6g\n", r.phi_t_std);
  std::printf("phi_t0_mean = %.6g\n", r.phi_t0_mean);
  std::printf("phi_t0_std = %.6g\n", r.phi_t0_std);
  std::printf("t = %.6g\n", r.t);
  std::printf("std_z_int = %.6g\n", r.std_z_int);
  std::printf("t_over_t0 = %.6g\n", r.t_over_t0);
  std::printf("roughness_norm = %.6g\n", r.roughness_norm);
  for (int i = 0; i < r.n_sublayers; ++i)
    std::printf("sublayer_phi_%d = %.6g\n", i, r.sublayer_phi[i]);
  std::printf("settle_packing = %.6g\n", r.settle_packing);
  std::printf("settle_converged = %d\n", r.settle_converged);
  std::printf("settle_penetration = %.6g\n", r.settle_penetration);
  std::printf("relax_converged = %d\n", r.relax_converged);
  std::printf("force_ratio = %.6g\n", r.force_ratio);
  std::printf("n_particles = %d\n", r.n_particles);
  std::printf("n_active_end = %d\n", r.n_active_end);
  std::printf("total_steps = %lld\n", r.total_steps);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cohesive powder spreading simulator"};
  app.require_subcommand(1);

  CommonOpts run_o, sweep_o, metrics_o;
  std::string snapshot_path;

  CLI::App* run_cmd = app.add_subcommand("run", "single staged experiment");
  add_common(run_cmd, run_o, true);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep");
  add_common(sweep_cmd, sweep_o, true);

  CLI::App* metrics_cmd =
      app.add_subcommand("metrics", "layer metrics of a snapshot");
  add_common(metrics_cmd, metrics_o, false);
  metrics_cmd->add_option("--snapshot", snapshot_path, "snapshot file")
      ->required();

  double an_gamma = -1.0, an_dbar = -1.0, an_rho = 4430.0, an_g = 9.81;
  double an_mmin = -1.0, an_kn = -1.0, an_reff = -1.0;
  CLI::App* an_cmd =
      app.add_subcommand("analyze", "force-ratio and timestep calculator");
  an_cmd->add_option("--gamma", an_gamma, "surface energy [J/m^2]");
  an_cmd->add_option("--dbar", an_dbar, "mean diameter [m]");
  an_cmd->add_option("--rho", an_rho, "density [kg/m^3]");
  an_cmd->add_option("--g", an_g, "gravity [m/s^2]");
  an_cmd->add_option("--mmin", an_mmin, "smallest particle mass [kg]");
  an_cmd->add_option("--kn", an_kn, "normal stiffness [N/m]");
  an_cmd->add_option("--reff", an_reff, "effective radius [m]");

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) {
    recoat_status st = RECOAT_OK;
    ConfigPtr cfg = make_config(run_o, st);
    if (!cfg || st != RECOAT_OK) return fail_with(st);
    recoat_report rep;
    st = recoat_run(cfg.get(), &rep);
    if (st != RECOAT_OK) return fail_with(st);
    print_report(rep);
    return 0;
  }

  if (sweep_cmd->parsed()) {
    recoat_status st = RECOAT_OK;
    ConfigPtr cfg = make_config(sweep_o, st);
    if (!cfg || st != RECOAT_OK) return fail_with(st);
    st = recoat_sweep(cfg.get());
    if (st != RECOAT_OK) return fail_with(st);
    return 0;
  }

  if (metrics_cmd->parsed()) {
    recoat_status st = RECOAT_OK;
    ConfigPtr cfg = make_config(metrics_o, st);
    if (!cfg || st != RECOAT_OK) return fail_with(st);
    recoat_report rep;
    st = recoat_metrics_from_snapshot(cfg.get(), snapshot_path.c_str(), &rep);
    if (st != RECOAT_OK) return fail_with(st);
    print_report(rep);
    return 0;
  }

  // analyze
  bool printed = false;
  if (an_gamma >= 0.0 && an_dbar > 0.0) {
    const double v = recoat_force_ratio(an_gamma, an_dbar, an_rho, an_g);
    std::printf("force_ratio = %.10g\n", v);
    printed = true;
  }
  if (an_mmin > 0.0 && an_kn > 0.0) {
    const double v = recoat_critical_timestep(an_mmin, an_kn);
    std::printf("critical_timestep = %.10g\n", v);
    printed = true;
  }
  if (an_gamma >= 0.0 && an_reff > 0.0) {
    const double v = recoat_pulloff_force(an_gamma, an_reff);
    std::printf("pulloff_force = %.10g\n", v);
    printed = true;
  }
  if (!printed) {
    std::fprintf(stderr,
                 "error: analyze needs --gamma with --dbar or --reff, or "
                 "--mmin with --kn\n");
    return 1;
  }
  return 0;
}
