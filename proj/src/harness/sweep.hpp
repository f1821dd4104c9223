#pragma once

#include <vector>

#include "harness/stages.hpp"

namespace recoat {

struct SweepResult {
  std::vector<RunRecord> records;
  bool any_failed = false;
};

// Cartesian product over the non-empty sweep lists (surface energy, layer
// height, blade speed, substrate energy, replicate seeds). Each run writes
// into <out_dir>/run_NNNN; the aggregate lands in <out_dir>/sweep.csv. A
// failing run is recorded in its row and does not stop the sweep.
SweepResult run_sweep(const RecoatConfig& base);

}  // namespace recoat
