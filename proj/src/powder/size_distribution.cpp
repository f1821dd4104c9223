#include "powder/size_distribution.hpp"

#include <cmath>

#include "common/error.hpp"

namespace recoat {

SizeDistribution fit_lognormal(double D10, double D50, double D90) {
  if (!(D10 > 0.0) || !(D10 < D50) || !(D50 < D90))
    fail(ErrorCode::invalid_parameter,
         "size distribution: need 0 < D10 < D50 < D90");
  constexpr double z90 = 1.2816;
  SizeDistribution d;
  d.mu_ln = std::log(D50);
  d.sigma_ln = (std::log(D50 / D10) + std::log(D90 / D50)) / (2.0 * z90);
  d.d_min = D10;
  d.d_max = D90;
  d.D10 = D10;
  d.D50 = D50;
  d.D90 = D90;
  d.d_max0 = D90;
  d.d_bar = D50;
  return d;
}

std::vector<double> sample_diameters(const SizeDistribution& dist, int count,
                                     Rng& rng) {
  if (count <= 0)
    fail(ErrorCode::invalid_parameter, "size distribution: count must be > 0");
  if (!(dist.d_min > 0.0) || !(dist.d_min < dist.d_max) ||
      !(dist.sigma_ln > 0.0))
    fail(ErrorCode::invalid_parameter, "size distribution: invalid fit");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(count));
  while (out.size() < static_cast<size_t>(count)) {
    const double d = std::exp(dist.mu_ln + dist.sigma_ln * rng.normal());
    if (d >= dist.d_min && d <= dist.d_max) out.push_back(d);
  }
  return out;
}

}  // namespace recoat
