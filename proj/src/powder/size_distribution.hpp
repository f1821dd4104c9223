#pragma once

#include <vector>

#include "common/rng.hpp"

namespace recoat {

// Truncated log-normal diameter law fitted to three percentiles.
struct SizeDistribution {
  double mu_ln = 0.0;     // ln of diameter in meters
  double sigma_ln = 0.0;
  double d_min = 0.0, d_max = 0.0;   // hard truncation bounds
  double D10 = 0.0, D50 = 0.0, D90 = 0.0;
  double d_max0 = 0.0;    // nominal max diameter, normalization scale
  double d_bar = 0.0;     // nominal mean diameter
};

// mu_ln = ln(D50); sigma_ln averages the two one-sided percentile spacings
// with the 90th-percentile normal score z90 = 1.2816. Truncation at
// [D10, D90].
SizeDistribution fit_lognormal(double D10, double D50, double D90);

// i.i.d. draws, rejection-resampled into [d_min, d_max].
std::vector<double> sample_diameters(const SizeDistribution& dist, int count,
                                     Rng& rng);

}  // namespace recoat
