#include "entropia/collapse_sweep.hpp"

#include <algorithm>

#include "entropia/dynamical_systems.hpp"
#include "entropia/entropy_estimators.hpp"
#include "entropia/error.hpp"
#include "entropia/profiles.hpp"

namespace entropia {

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 2 || !(hi > lo)) throw Error(ErrorKind::InvalidInput, "need steps ≥ 2 and hi > lo");
  std::vector<double> out;
  for (int i = 0; i < steps; ++i) out.push_back(lo + (hi - lo) * i / (steps - 1));
  return out;
}

CollapseSweep collapse_sweep(const MappingTorusSpec& spec, const SweepOptions& opts) {
  CollapseSweep out;
  out.s1 = contact_threshold(spec, opts.grid).s1;
  const std::vector<double> s_list = linear_grid(opts.s_min, opts.s_max, opts.steps);
  out.table = collapse_volumes(spec, s_list, opts.return_samples, out.s1);

  for (std::size_t i = 0; i < s_list.size(); ++i) {
    const double s = s_list[i];
    GammaOptions g;
    g.horizon = opts.horizon;
    g.states = opts.states;
    g.seed = opts.seed + i;
    const double g_mt = gamma(reeb_mapping_torus_map(spec.with_s(s)), g).value;
    const double g_st = gamma(reeb_solid_torus_map(ProfileFunctions::dim3(s)), g).value;
    const double value = std::max(g_mt, g_st);
    out.gamma.push_back(value);
    out.normalized.push_back(normalize_form(out.table.rows[i].vol_total, 1, value).value);
  }

  out.tail_decreasing = true;
  const std::size_t half = (out.normalized.size() + 1) / 2;
  for (std::size_t i = 1; i < half; ++i) {
    if (!(out.normalized[i] > out.normalized[i - 1])) out.tail_decreasing = false;
  }
  return out;
}

}  // namespace entropia
