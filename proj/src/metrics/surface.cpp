#include "metrics/surface.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "geom/process.hpp"

namespace recoat {

ScalarField2D surface_profile_raw(std::span<const Particle> particles,
                                  const SurfaceWindow& win, double delta_sr) {
  if (delta_sr <= 0.0 || win.x1 <= win.x0 || win.y1 <= win.y0)
    fail(ErrorCode::invalid_parameter, "surface profile: bad window");
  const int nx = std::max(
      1, static_cast<int>(std::llround((win.x1 - win.x0) / delta_sr)));
  const int ny = std::max(
      1, static_cast<int>(std::llround((win.y1 - win.y0) / delta_sr)));
  ScalarField2D f =
      make_field(win.x0, win.y0, delta_sr, nx, ny, win.substrate_z);
  // row wrap is only meaningful when the window spans the periodic cell
  const bool wrap_rows =
      win.L_y > 0.0 && std::abs((win.y1 - win.y0) - win.L_y) < 1e-12 * win.L_y;

  for (const Particle& p : particles) {
    if (!p.active) continue;
    const double r = p.r;
    // ray index ranges covered by the sphere footprint
    const int ix0 = static_cast<int>(
        std::ceil((p.r_G.x - r - win.x0) / delta_sr - 0.5));
    const int ix1 = static_cast<int>(
        std::floor((p.r_G.x + r - win.x0) / delta_sr - 0.5));
    const int iy0 = static_cast<int>(
        std::ceil((p.r_G.y - r - win.y0) / delta_sr - 0.5));
    const int iy1 = static_cast<int>(
        std::floor((p.r_G.y + r - win.y0) / delta_sr - 0.5));
    for (int iy = iy0; iy <= iy1; ++iy) {
      int iyw = iy;
      if (wrap_rows) {
        iyw = iy % ny;
        if (iyw < 0) iyw += ny;
      } else if (iy < 0 || iy >= ny) {
        continue;
      }
      const double ry = win.y0 + (iy + 0.5) * delta_sr;
      const double dy = win.L_y > 0.0 ? min_image_dy(ry - p.r_G.y, win.L_y)
                                      : ry - p.r_G.y;
      for (int ix = std::max(ix0, 0); ix <= std::min(ix1, nx - 1); ++ix) {
        const double rx = win.x0 + (ix + 0.5) * delta_sr;
        const double dx = rx - p.r_G.x;
        const double rho2 = dx * dx + dy * dy;
        if (rho2 >= r * r) continue;
        const double z = p.r_G.z + std::sqrt(r * r - rho2);
        double& cell = f.at(ix, iyw);
        cell = std::max(cell, z);
      }
    }
  }
  return f;
}

ScalarField2D surface_profile_filtered(const ScalarField2D& raw, int factor) {
  if (factor <= 0 || raw.nx % factor != 0 || raw.ny % factor != 0)
    fail(ErrorCode::invalid_parameter,
         "surface filter: segment size must tile the raw grid");
  ScalarField2D out = make_field(raw.origin_x, raw.origin_y,
                                 raw.pitch * factor, raw.nx / factor,
                                 raw.ny / factor, 0.0);
  for (int iy = 0; iy < out.ny; ++iy) {
    for (int ix = 0; ix < out.nx; ++ix) {
      double m = raw.at(ix * factor, iy * factor);
      for (int sy = 0; sy < factor; ++sy)
        for (int sx = 0; sx < factor; ++sx)
          m = std::max(m, raw.at(ix * factor + sx, iy * factor + sy));
      out.at(ix, iy) = m;
    }
  }
  return out;
}

}  // namespace recoat
