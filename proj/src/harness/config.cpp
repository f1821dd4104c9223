#include "harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "common/error.hpp"

namespace recoat {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    fail(ErrorCode::config, "config: key '" + key + "': bad number '" + v + "'");
  return x;
}

int64_t parse_int(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    fail(ErrorCode::config, "config: key '" + key + "': bad integer '" + v + "'");
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(ErrorCode::config, "config: key '" + key + "': bad boolean '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (out.empty()) out.push_back("");
  return out;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct KeyDesc {
  const char* key;
  const char* doc;
  std::function<void(RecoatConfig&, const std::string&)> set;
  std::function<std::string(const RecoatConfig&)> get;
};

KeyDesc dbl_key(const char* key, double RecoatConfig::* f, const char* doc) {
  return {key, doc,
          [key, f](RecoatConfig& c, const std::string& v) {
            c.*f = parse_double(key, v);
          },
          [f](const RecoatConfig& c) { return fmt(c.*f); }};
}

KeyDesc list_key(const char* key, std::vector<double> RecoatConfig::* f,
                 const char* doc) {
  return {key, doc,
          [key, f](RecoatConfig& c, const std::string& v) {
            (c.*f).clear();
            // an empty value clears the sweep list
            for (const std::string& s : split_list(v))
              if (!s.empty()) (c.*f).push_back(parse_double(key, s));
          },
          [f](const RecoatConfig& c) {
            std::string s;
            for (size_t i = 0; i < (c.*f).size(); ++i)
              s += (i ? "," : "") + fmt((c.*f)[i]);
            return s;
          }};
}

const std::vector<KeyDesc>& registry() {
  static const std::vector<KeyDesc> table = [] {
    std::vector<KeyDesc> t;
    t.push_back(dbl_key("material.gamma0", &RecoatConfig::gamma0,
                        "reference surface energy [J/m^2]"));
    t.push_back(dbl_key("material.gamma_rel", &RecoatConfig::gamma_rel,
                        "particle surface energy as multiple of gamma0"));
    t.push_back(dbl_key("material.gamma_B_rel", &RecoatConfig::gamma_B_rel,
                        "blade surface energy multiple; <0 follows gamma_rel"));
    t.push_back(dbl_key("material.gamma_W_rel", &RecoatConfig::gamma_W_rel,
                        "substrate surface energy multiple; <0 follows gamma_rel"));
    t.push_back(dbl_key("material.rho", &RecoatConfig::rho,
                        "particle density [kg/m^3]"));
    t.push_back(dbl_key("material.hamaker", &RecoatConfig::hamaker,
                        "van der Waals constant [J]"));
    t.push_back(dbl_key("material.mu", &RecoatConfig::mu,
                        "particle and blade friction coefficient"));
    t.push_back(dbl_key("material.mu_W", &RecoatConfig::mu_W,
                        "substrate friction; <0 follows mu"));
    t.push_back(dbl_key("material.mu_R", &RecoatConfig::mu_R,
                        "rolling resistance coefficient"));
    t.push_back(dbl_key("material.c_COR", &RecoatConfig::c_COR,
                        "normal coefficient of restitution"));
    t.push_back(dbl_key("material.k_N", &RecoatConfig::k_N,
                        "normal stiffness [N/m]; <0 picks 0.05, or 0.2 above gamma0"));
    t.push_back(dbl_key("material.k_T", &RecoatConfig::k_T,
                        "tangential stiffness [N/m]; <0 follows k_N"));
    t.push_back(dbl_key("material.g", &RecoatConfig::g,
                        "gravity magnitude [m/s^2], acts in -z"));
    t.push_back(dbl_key("distribution.D10", &RecoatConfig::D10,
                        "10th percentile diameter [m]"));
    t.push_back(dbl_key("distribution.D50", &RecoatConfig::D50,
                        "median diameter [m]"));
    t.push_back(dbl_key("distribution.D90", &RecoatConfig::D90,
                        "90th percentile diameter [m]"));
    t.push_back(dbl_key("distribution.mu_ln", &RecoatConfig::mu_ln,
                        "log-mean override, used when sigma_ln >= 0"));
    t.push_back(dbl_key("distribution.sigma_ln", &RecoatConfig::sigma_ln,
                        "log-std override; <0 fits from percentiles"));
    t.push_back(dbl_key("geometry.bed_length", &RecoatConfig::bed_length,
                        "bed extent in the spread direction [m]"));
    t.push_back(dbl_key("geometry.bed_width", &RecoatConfig::bed_width,
                        "periodic bed width [m]"));
    t.push_back(dbl_key("geometry.t0_rel", &RecoatConfig::t0_rel,
                        "nominal layer height as multiple of the max diameter"));
    t.push_back(dbl_key("geometry.t0", &RecoatConfig::t0_abs,
                        "nominal layer height [m]; <0 uses t0_rel"));
    t.push_back(dbl_key("geometry.wall_width", &RecoatConfig::wall_width,
                        "separating and end wall width [m]"));
    t.push_back(dbl_key("geometry.reservoir_length",
                        &RecoatConfig::reservoir_length,
                        "powder reservoir cavity length [m]"));
    t.push_back(dbl_key("geometry.blade_thickness",
                        &RecoatConfig::blade_thickness, "blade thickness [m]"));
    t.push_back(dbl_key("geometry.blade_height", &RecoatConfig::blade_height,
                        "blade height above its lower edge [m]"));
    t.push_back(dbl_key("geometry.blade_overshoot",
                        &RecoatConfig::blade_overshoot,
                        "front-face travel past the end wall [m]"));
    t.push_back(dbl_key("geometry.V0", &RecoatConfig::V0,
                        "reference blade speed [m/s]"));
    t.push_back(dbl_key("geometry.blade_speed_rel",
                        &RecoatConfig::blade_speed_rel,
                        "blade speed as multiple of V0"));
    t.push_back(dbl_key("geometry.blade_speed", &RecoatConfig::blade_speed_abs,
                        "blade speed [m/s]; <0 uses blade_speed_rel"));
    t.push_back(dbl_key("process.feed_factor", &RecoatConfig::feed_factor,
                        "dosed solid volume over bed area x t0"));
    t.push_back(dbl_key("process.dwell", &RecoatConfig::dwell,
                        "pause between dose and spread [s]"));
    t.push_back(dbl_key("process.relax_duration", &RecoatConfig::relax_duration,
                        "post-spread relax time before evaluation [s]"));
    t.push_back(dbl_key("process.settle_threshold",
                        &RecoatConfig::settle_threshold,
                        "settle speed threshold [m/s]"));
    t.push_back(KeyDesc{
        "process.settle_consecutive",
        "consecutive quiet steps required to declare settled",
        [](RecoatConfig& c, const std::string& v) {
          c.settle_consecutive = static_cast<int>(
              parse_int("process.settle_consecutive", v));
        },
        [](const RecoatConfig& c) {
          return std::to_string(c.settle_consecutive);
        }});
    t.push_back(KeyDesc{
        "process.settle_cap", "settle step cap",
        [](RecoatConfig& c, const std::string& v) {
          c.settle_cap = parse_int("process.settle_cap", v);
        },
        [](const RecoatConfig& c) { return std::to_string(c.settle_cap); }});
    t.push_back(KeyDesc{
        "process.relax_quiet_cap", "post-relax quiesce step cap",
        [](RecoatConfig& c, const std::string& v) {
          c.relax_quiet_cap = parse_int("process.relax_quiet_cap", v);
        },
        [](const RecoatConfig& c) {
          return std::to_string(c.relax_quiet_cap);
        }});
    t.push_back(dbl_key("process.seed_pitch", &RecoatConfig::seed_pitch,
                        "fill lattice pitch [m]"));
    t.push_back(KeyDesc{
        "process.jitter_seed", "lattice jitter stream seed, fixed by design",
        [](RecoatConfig& c, const std::string& v) {
          c.jitter_seed =
              static_cast<uint64_t>(parse_int("process.jitter_seed", v));
        },
        [](const RecoatConfig& c) { return std::to_string(c.jitter_seed); }});
    t.push_back(dbl_key("metrics.delta_sr", &RecoatConfig::delta_sr,
                        "surface ray pitch [m]"));
    t.push_back(dbl_key("metrics.delta_sr_int", &RecoatConfig::delta_sr_int,
                        "surface max-filter segment [m]"));
    t.push_back(dbl_key("metrics.delta_pf", &RecoatConfig::delta_pf,
                        "packing bin size [m]"));
    t.push_back(dbl_key("metrics.delta_v", &RecoatConfig::delta_v,
                        "voxel edge [m]; <0 uses D10/8"));
    t.push_back(dbl_key("metrics.window_x0", &RecoatConfig::win_x0,
                        "evaluation window start [m]; <0 centers half the bed"));
    t.push_back(dbl_key("metrics.window_x1", &RecoatConfig::win_x1,
                        "evaluation window end [m]; <0 centers half the bed"));
    t.push_back(KeyDesc{
        "run.seed", "diameter-sampling RNG seed",
        [](RecoatConfig& c, const std::string& v) {
          c.seed = static_cast<uint64_t>(parse_int("run.seed", v));
        },
        [](const RecoatConfig& c) { return std::to_string(c.seed); }});
    t.push_back(dbl_key("run.dt", &RecoatConfig::dt,
                        "timestep [s]; 0 picks 0.9 x the stable limit"));
    t.push_back(KeyDesc{
        "run.threads", "worker threads (sweep fan-out; forces when non-deterministic)",
        [](RecoatConfig& c, const std::string& v) {
          c.threads = static_cast<int>(parse_int("run.threads", v));
        },
        [](const RecoatConfig& c) { return std::to_string(c.threads); }});
    t.push_back(KeyDesc{
        "run.deterministic", "sequential-deterministic force evaluation",
        [](RecoatConfig& c, const std::string& v) {
          c.deterministic = parse_bool("run.deterministic", v);
        },
        [](const RecoatConfig& c) {
          return std::string(c.deterministic ? "true" : "false");
        }});
    t.push_back(KeyDesc{
        "run.out_dir", "output directory",
        [](RecoatConfig& c, const std::string& v) { c.out_dir = v; },
        [](const RecoatConfig& c) { return c.out_dir; }});
    t.push_back(KeyDesc{
        "run.snapshot_cadence",
        "write a snapshot every N spread steps, 0 = final only",
        [](RecoatConfig& c, const std::string& v) {
          c.snapshot_cadence =
              static_cast<int>(parse_int("run.snapshot_cadence", v));
        },
        [](const RecoatConfig& c) {
          return std::to_string(c.snapshot_cadence);
        }});
    t.push_back(list_key("sweep.gamma_rel", &RecoatConfig::sweep_gamma_rel,
                         "surface-energy multiples to sweep"));
    t.push_back(list_key("sweep.t0_rel", &RecoatConfig::sweep_t0_rel,
                         "layer-height multiples to sweep"));
    t.push_back(list_key("sweep.blade_speed_rel", &RecoatConfig::sweep_speed_rel,
                         "blade-speed multiples to sweep"));
    t.push_back(list_key("sweep.gamma_W_rel", &RecoatConfig::sweep_gamma_W_rel,
                         "substrate surface-energy multiples to sweep"));
    t.push_back(KeyDesc{
        "sweep.seeds", "replicate seeds (comma list)",
        [](RecoatConfig& c, const std::string& v) {
          c.sweep_seeds.clear();
          for (const std::string& s : split_list(v))
            if (!s.empty())
              c.sweep_seeds.push_back(
                  static_cast<uint64_t>(parse_int("sweep.seeds", s)));
        },
        [](const RecoatConfig& c) {
          std::string s;
          for (size_t i = 0; i < c.sweep_seeds.size(); ++i)
            s += (i ? "," : "") + std::to_string(c.sweep_seeds[i]);
          return s;
        }});
    return t;
  }();
  return table;
}

}  // namespace

void apply_preset(RecoatConfig& cfg, const std::string& name) {
  if (name == "desk") {
    cfg.bed_length = 2e-3;
    cfg.bed_width = 0.5e-3;
    cfg.reservoir_length = 1e-3;
    cfg.win_x0 = 0.5e-3;
    cfg.win_x1 = 1.5e-3;
  } else if (name == "full") {
    cfg.bed_length = 5e-3;
    cfg.bed_width = 1e-3;
    cfg.reservoir_length = 2.5e-3;
    cfg.win_x0 = 1e-3;
    cfg.win_x1 = 4e-3;
  } else {
    fail(ErrorCode::config, "config: unknown preset '" + name + "'");
  }
}

void apply_key(RecoatConfig& cfg, const std::string& key,
               const std::string& value) {
  if (key == "preset") {
    apply_preset(cfg, value);
    return;
  }
  for (const KeyDesc& d : registry()) {
    if (key == d.key) {
      d.set(cfg, value);
      return;
    }
  }
  fail(ErrorCode::config, "config: unknown key '" + key + "'");
}

bool get_key(const RecoatConfig& cfg, const std::string& key,
             std::string& value) {
  for (const KeyDesc& d : registry()) {
    if (key == d.key) {
      value = d.get(cfg);
      return true;
    }
  }
  return false;
}

RecoatConfig parse_config_text(const std::string& text) {
  RecoatConfig cfg;
  std::vector<std::pair<std::string, std::string>> kvs;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  std::string preset;
  while (std::getline(ss, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::config, "config: line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      fail(ErrorCode::config,
           "config: line " + std::to_string(lineno) + ": empty key");
    if (key == "preset")
      preset = value;  // applied first so explicit keys win
    else
      kvs.emplace_back(key, value);
  }
  if (!preset.empty()) apply_preset(cfg, preset);
  for (const auto& [k, v] : kvs) apply_key(cfg, k, v);
  cfg.validate();
  return cfg;
}

RecoatConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::config, "config: cannot open " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_config_text(buf.str());
}

MaterialTable RecoatConfig::resolved_material() const {
  MaterialTable m;
  m.rho = rho;
  m.g = {0.0, 0.0, -g};
  m.gamma = gamma_rel * gamma0;
  m.gamma_B = (gamma_B_rel >= 0.0 ? gamma_B_rel : gamma_rel) * gamma0;
  m.gamma_W = (gamma_W_rel >= 0.0 ? gamma_W_rel : gamma_rel) * gamma0;
  m.A = hamaker;
  // stiffer springs pair with the strongly cohesive regime
  m.k_N = k_N >= 0.0 ? k_N : (gamma_rel > 1.0 ? 0.2 : 0.05);
  m.k_T = k_T >= 0.0 ? k_T : m.k_N;
  m.mu = mu;
  m.mu_W = mu_W >= 0.0 ? mu_W : mu;
  m.mu_R = mu_R;
  m.c_COR = c_COR;
  m.finalize();
  m.validate();
  return m;
}

SizeDistribution RecoatConfig::resolved_distribution() const {
  SizeDistribution d = fit_lognormal(D10, D50, D90);
  if (sigma_ln >= 0.0) {
    d.mu_ln = mu_ln;
    d.sigma_ln = sigma_ln;
  }
  return d;
}

MetricGridSpec RecoatConfig::resolved_metrics() const {
  MetricGridSpec m;
  m.delta_sr = delta_sr;
  m.delta_sr_int = delta_sr_int;
  m.delta_pf = delta_pf;
  m.delta_v = resolved_delta_v();
  m.win_x0 = resolved_win_x0();
  m.win_x1 = resolved_win_x1();
  m.win_y0 = 0.0;
  m.win_y1 = bed_width;
  m.L_y = bed_width;
  m.substrate_z = 0.0;
  return m;
}

void RecoatConfig::validate() const {
  auto bad = [](const std::string& key, const std::string& why) {
    fail(ErrorCode::config, "config: key '" + key + "': " + why);
  };
  if (gamma0 < 0.0) bad("material.gamma0", "must be >= 0");
  if (gamma_rel < 0.0) bad("material.gamma_rel", "must be >= 0");
  if (rho <= 0.0) bad("material.rho", "must be > 0");
  if (hamaker <= 0.0) bad("material.hamaker", "must be > 0");
  if (c_COR <= 0.0 || c_COR > 1.0) bad("material.c_COR", "must be in (0, 1]");
  if (g <= 0.0) bad("material.g", "must be > 0");
  if (!(D10 > 0.0 && D10 < D50 && D50 < D90))
    bad("distribution.D10", "need 0 < D10 < D50 < D90");
  if (bed_length <= 0.0) bad("geometry.bed_length", "must be > 0");
  if (bed_width <= 0.0) bad("geometry.bed_width", "must be > 0");
  if (resolved_t0() <= 0.0) bad("geometry.t0", "must be > 0");
  if (resolved_t0() < D90)
    bad("geometry.t0", "blade gap below the largest diameter");
  if (wall_width <= 0.0) bad("geometry.wall_width", "must be > 0");
  if (reservoir_length <= 0.0) bad("geometry.reservoir_length", "must be > 0");
  if (blade_thickness <= 0.0) bad("geometry.blade_thickness", "must be > 0");
  if (blade_height <= resolved_t0())
    bad("geometry.blade_height", "blade must rise above the gap plane");
  if (resolved_blade_speed() <= 0.0) bad("geometry.blade_speed", "must be > 0");
  if (feed_factor <= 0.0) bad("process.feed_factor", "must be > 0");
  if (dwell < 0.0) bad("process.dwell", "must be >= 0");
  if (relax_duration < 0.0) bad("process.relax_duration", "must be >= 0");
  if (settle_threshold <= 0.0) bad("process.settle_threshold", "must be > 0");
  if (settle_consecutive <= 0) bad("process.settle_consecutive", "must be > 0");
  if (settle_cap <= 0) bad("process.settle_cap", "must be > 0");
  if (seed_pitch <= 0.0) bad("process.seed_pitch", "must be > 0");
  if (0.8 * seed_pitch < D90)
    bad("process.seed_pitch", "too small for the largest diameter");
  if (dt < 0.0) bad("run.dt", "must be >= 0");
  if (threads < 1) bad("run.threads", "must be >= 1");
  const double wx0 = resolved_win_x0(), wx1 = resolved_win_x1();
  if (!(wx0 >= 0.0 && wx0 < wx1 && wx1 <= bed_length))
    bad("metrics.window_x0", "window must lie inside the bed");
  MetricGridSpec m = resolved_metrics();
  m.validate(D10);
  const double nb = (wx1 - wx0) / delta_pf;
  if (std::abs(nb - std::llround(nb)) > 1e-6)
    bad("metrics.delta_pf", "must tile the evaluation window");
  const double nby = bed_width / delta_pf;
  if (std::abs(nby - std::llround(nby)) > 1e-6)
    bad("metrics.delta_pf", "must tile the bed width");
  for (const double v : sweep_gamma_rel)
    if (v < 0.0) bad("sweep.gamma_rel", "entries must be >= 0");
  for (const double v : sweep_t0_rel)
    if (v <= 0.0) bad("sweep.t0_rel", "entries must be > 0");
  for (const double v : sweep_speed_rel)
    if (v <= 0.0) bad("sweep.blade_speed_rel", "entries must be > 0");
  for (const double v : sweep_gamma_W_rel)
    if (v < 0.0) bad("sweep.gamma_W_rel", "entries must be >= 0");
}

std::string echo_config(const RecoatConfig& cfg) {
  std::vector<std::string> lines;
  for (const KeyDesc& d : registry())
    lines.push_back(std::string(d.key) + " = " + d.get(cfg));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const std::string& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

uint64_t config_hash(const RecoatConfig& cfg) {
  // FNV-1a over the sorted echo, minus run-identity keys that must not
  // distinguish physically identical runs
  uint64_t h = 1469598103934665603ull;
  std::stringstream ss(echo_config(cfg));
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind("run.out_dir", 0) == 0 || line.rfind("run.threads", 0) == 0)
      continue;
    for (const char c : line) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    h ^= '\n';
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_key_reference() {
  std::string out = "preset = desk | full (geometry bundle, applied first)\n";
  for (const KeyDesc& d : registry())
    out += std::string(d.key) + " : " + d.doc + "\n";
  return out;
}

}  // namespace recoat
