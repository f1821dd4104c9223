#include "harness/snapshot.hpp"

#include <cinttypes>
#include <cstdio>
#include <string>

#include "common/error.hpp"

namespace recoat {

void write_snapshot(const std::string& path, std::span<const Particle> ps,
                    double time, double blade_x) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) fail(ErrorCode::io, "snapshot: cannot write " + path);
  size_t n = 0;
  for (const Particle& p : ps)
    if (p.active) ++n;
  std::fprintf(f, "# t=%.17e n=%zu blade_x=%.17e\n", time, n, blade_x);
  for (const Particle& p : ps) {
    if (!p.active) continue;
    std::fprintf(f, "%" PRId64 ",%.17e,%.17e,%.17e,%.17e,%.17e,%.17e,%.17e\n",
                 p.id, p.r_G.x, p.r_G.y, p.r_G.z, p.r, p.v.x, p.v.y, p.v.z);
  }
  if (std::fclose(f) != 0) fail(ErrorCode::io, "snapshot: write failed " + path);
}

Snapshot read_snapshot(const std::string& path, double rho) {
  std::FILE* f = std::fopen(path.c_str(), "r");
  if (!f) fail(ErrorCode::io, "snapshot: cannot open " + path);
  Snapshot snap;
  size_t n = 0;
  if (std::fscanf(f, "# t=%lf n=%zu blade_x=%lf\n", &snap.time, &n,
                  &snap.blade_x) != 3) {
    std::fclose(f);
    fail(ErrorCode::io, "snapshot: bad header in " + path);
  }
  snap.particles.reserve(n);
  int64_t id = 0;
  double x, y, z, r, vx, vy, vz;
  while (std::fscanf(f, "%" SCNd64 ",%lf,%lf,%lf,%lf,%lf,%lf,%lf\n", &id, &x,
                     &y, &z, &r, &vx, &vy, &vz) == 8) {
    Particle p = make_particle(id, {x, y, z}, r, rho);
    p.v = {vx, vy, vz};
    snap.particles.push_back(p);
  }
  std::fclose(f);
  if (snap.particles.size() != n)
    fail(ErrorCode::io, "snapshot: count mismatch in " + path + ", header " +
                            std::to_string(n) + " vs " +
                            std::to_string(snap.particles.size()));
  return snap;
}

}  // namespace recoat
