#pragma once

// The entropy-collapse sweep: volumes of the dim3 open book together with
// the norm growth of its Reeb flow and the volume-normalized product
// Γ · vol^{1/2}, over a range of s.

#include <cstdint>
#include <vector>

#include "entropia/reeb_collapse.hpp"

namespace entropia {

struct SweepOptions {
  double s_min = 0.02;
  double s_max = 0.5;
  int steps = 8;
  int horizon = 200;
  std::size_t states = 32;
  std::uint64_t seed = 0;
  int return_samples = 32;
  int grid = 64;  // contact-threshold scan
};

struct CollapseSweep {
  CollapseTable table;
  std::vector<double> gamma;       // max over the two flow pieces, per row
  std::vector<double> normalized;  // gamma · vol_total^{1/2}
  double s1 = 0.0;
  bool tail_decreasing = false;  // normalized value decreases with s over the small-s half
};

/// `steps` equally spaced values in [s_min, s_max].
std::vector<double> linear_grid(double lo, double hi, int steps);

/// Row i uses seed + i for its Γ state sample.
CollapseSweep collapse_sweep(const MappingTorusSpec& spec, const SweepOptions& opts);

}  // namespace entropia
