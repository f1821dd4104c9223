/* Cohesive-powder spreading simulator: C interface.
 *
 * All entry points are exception-free; failures return a status code and
 * store a message retrievable with recoat_last_error() (thread-local). */
#ifndef RECOAT_RECOAT_H
#define RECOAT_RECOAT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum recoat_status {
  RECOAT_OK = 0,
  RECOAT_ERR_CONFIG = 1,   /* bad key, value, or invariant at load time */
  RECOAT_ERR_RUNTIME = 2,  /* aborted during integration or staging */
  RECOAT_ERR_PARTIAL = 3,  /* sweep finished but some runs failed */
  RECOAT_ERR_INVALID = 4,  /* bad argument to an operation */
  RECOAT_ERR_IO = 5        /* file read or write failure */
} recoat_status;

/* Opaque experiment description. */
typedef struct recoat_config recoat_config;

recoat_config* recoat_config_default(void);
/* NULL on failure; *status (optional) receives the cause. */
recoat_config* recoat_config_load(const char* path, recoat_status* status);
recoat_status recoat_config_set(recoat_config* cfg, const char* key,
                                const char* value);
/* Formatted value of one key; fails with RECOAT_ERR_INVALID on unknown key
 * or too-small buffer. */
recoat_status recoat_config_get(const recoat_config* cfg, const char* key,
                                char* buf, size_t buflen);
/* Re-checks invariants; RECOAT_ERR_CONFIG with a key path on violation. */
recoat_status recoat_config_validate(const recoat_config* cfg);
uint64_t recoat_config_hash(const recoat_config* cfg);
void recoat_config_free(recoat_config* cfg);

/* Flat layer-quality summary of one run. */
typedef struct recoat_report {
  double phi_t_mean, phi_t_std;    /* packing at measured height */
  double phi_t0_mean, phi_t0_std;  /* packing at nominal height */
  double t;                        /* mean filtered surface height [m] */
  double std_z_int;                /* surface roughness [m] */
  double t_over_t0;
  double roughness_norm;           /* std_z_int / max diameter */
  double sublayer_phi[8];
  int n_sublayers;
  double settle_packing;
  double settle_penetration;       /* max overlap / r_eff when settled */
  long long settle_steps;
  int settle_converged;
  int relax_converged;
  long long total_steps;
  int n_particles;
  int n_active_end;
  double force_ratio;              /* adhesion pull-off over weight */
} recoat_report;

/* Full staged experiment; artifacts land in the configured output
 * directory. `out` may be NULL when only the files matter. */
recoat_status recoat_run(const recoat_config* cfg, recoat_report* out);

/* Cartesian sweep per the config's sweep lists. Returns RECOAT_ERR_PARTIAL
 * when some runs failed but the aggregate was still written. */
recoat_status recoat_sweep(const recoat_config* cfg);

/* Layer metrics of a particle snapshot, standalone. */
recoat_status recoat_metrics_from_snapshot(const recoat_config* cfg,
                                           const char* snapshot_path,
                                           recoat_report* out);

/* Analysis helpers. Invalid inputs return NaN and set the error message. */
double recoat_force_ratio(double gamma, double d_bar, double rho, double g);
double recoat_critical_timestep(double m_min, double k_N);
double recoat_pulloff_force(double gamma, double r_eff);

/* Message for the most recent failure on this thread; empty if none. */
const char* recoat_last_error(void);
const char* recoat_version(void);
/* Newline-separated "key : documentation" reference of all config keys. */
const char* recoat_config_keys(void);

#ifdef __cplusplus
}
#endif

#endif /* RECOAT_RECOAT_H */
