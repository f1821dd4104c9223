#include "powder/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "common/error.hpp"

namespace recoat {

std::vector<Particle> seed_lattice(const std::vector<double>& diameters,
                                   const SeedRegion& region, double pitch,
                                   double rho, Rng& jitter_rng,
                                   int64_t first_id) {
  if (diameters.empty())
    fail(ErrorCode::invalid_parameter, "seeding: no diameters");
  if (pitch <= 0.0) fail(ErrorCode::invalid_parameter, "seeding: bad pitch");
  const double d_big = *std::max_element(diameters.begin(), diameters.end());
  // jitter of 0.1 pitch per axis per particle can shrink a nearest-neighbor
  // distance to 0.8 pitch
  if (0.8 * pitch < d_big)
    fail(ErrorCode::invalid_parameter,
         "seeding: pitch too small for largest diameter, need >= " +
             std::to_string(d_big / 0.8));

  const Vec3 ext = region.hi - region.lo;
  if (ext.x < d_big || ext.y < d_big || ext.z < d_big)
    fail(ErrorCode::invalid_parameter, "seeding: region smaller than a particle");
  const int nx = std::max(1, static_cast<int>(std::floor(ext.x / pitch)));
  const int ny = std::max(1, static_cast<int>(std::floor(ext.y / pitch)));
  const int nz = std::max(1, static_cast<int>(std::floor(ext.z / pitch)));
  const int64_t capacity =
      static_cast<int64_t>(nx) * static_cast<int64_t>(ny) * static_cast<int64_t>(nz);
  if (capacity < static_cast<int64_t>(diameters.size()))
    fail(ErrorCode::invalid_parameter,
         "seeding: region fits at most " + std::to_string(capacity) +
             " particles, got " + std::to_string(diameters.size()));

  std::vector<Particle> out;
  if (diameters.size() == 1) {
    out.push_back(make_particle(first_id, region.lo + ext * 0.5,
                                0.5 * diameters[0], rho));
    return out;
  }

  // lattice centered in x/y, bottom-aligned in z so partial fills stack low
  const Vec3 origin =
      region.lo + Vec3{0.5 * (ext.x - (nx - 1) * pitch),
                       0.5 * (ext.y - (ny - 1) * pitch), 0.5 * pitch};
  out.reserve(diameters.size());
  int64_t placed = 0;
  for (int iz = 0; iz < nz && placed < static_cast<int64_t>(diameters.size());
       ++iz) {
    for (int iy = 0; iy < ny && placed < static_cast<int64_t>(diameters.size());
         ++iy) {
      for (int ix = 0;
           ix < nx && placed < static_cast<int64_t>(diameters.size()); ++ix) {
        const Vec3 jitter{jitter_rng.uniform(-0.1 * pitch, 0.1 * pitch),
                          jitter_rng.uniform(-0.1 * pitch, 0.1 * pitch),
                          jitter_rng.uniform(-0.1 * pitch, 0.1 * pitch)};
        const Vec3 pos = origin + Vec3{ix * pitch, iy * pitch, iz * pitch} + jitter;
        out.push_back(make_particle(first_id + placed, pos,
                                    0.5 * diameters[static_cast<size_t>(placed)],
                                    rho));
        ++placed;
      }
    }
  }
  return out;
}

}  // namespace recoat
