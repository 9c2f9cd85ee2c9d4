#include "entropia/entropy_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "entropia/dual.hpp"
#include "entropia/error.hpp"
#include "entropia/kernels.hpp"
#include "entropia/parallel.hpp"

namespace entropia {

namespace {

using State = Eigen::VectorXd;

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

std::vector<State> sample_states(const DiscreteSystem& sys, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<State> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sys.sample(rng));
  return out;
}

// Hash of a cell index vector. Colliding cells only add candidate pairs,
// which the exact distance check then discards.
std::uint64_t cell_hash(const std::vector<std::int64_t>& key) {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto v : key) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 1099511628211ULL;
  }
  return h;
}

// Cell indices of a point in a grid whose cells are at least delta wide.
struct CellGrid {
  std::vector<double> period;
  std::vector<double> lower;
  std::vector<std::int64_t> cells;  // per coordinate, 0 if unbounded
  double delta = 1.0;

  CellGrid(const DiscreteSystem& sys, double d, int copies) : delta(d) {
    for (int c = 0; c < copies; ++c) {
      for (int i = 0; i < sys.dim; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double per = k < sys.period.size() ? sys.period[k] : 0.0;
        period.push_back(per);
        lower.push_back(k < sys.lower.size() ? sys.lower[k] : 0.0);
        cells.push_back(per > 0.0 ? std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(per / d))) : 0);
      }
    }
  }

  std::vector<std::int64_t> key(const State& p) const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(p.size()));
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      const auto k = static_cast<std::size_t>(i);
      if (cells[k] > 0) {
        const double frac = wrap(p(i) - lower[k], period[k]) / period[k];
        out[k] = std::min<std::int64_t>(cells[k] - 1, static_cast<std::int64_t>(std::floor(frac * cells[k])));
      } else {
        out[k] = static_cast<std::int64_t>(std::floor((p(i) - lower[k]) / delta));
      }
    }
    return out;
  }

  // Distinct neighbouring indices (offsets −1, 0, 1) of one coordinate.
  std::vector<std::int64_t> around(std::size_t k, std::int64_t idx) const {
    std::vector<std::int64_t> out;
    for (std::int64_t off = -1; off <= 1; ++off) {
      std::int64_t v = idx + off;
      if (cells[k] > 0) v = ((v % cells[k]) + cells[k]) % cells[k];
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    return out;
  }
};

// Index of the first sample n ≥ count/2 in a series indexed by n − 1.
std::size_t tail_start(std::size_t count) { return (count + 1) / 2 - 1; }

}  // namespace

SlopeFit tail_slope(const std::vector<double>& t, const std::vector<double>& y, std::size_t first) {
  SlopeFit fit;
  const std::size_t n = t.size();
  if (n < first + 2) throw Error(ErrorKind::InvalidInput, "need two points for a slope");
  const double m = static_cast<double>(n - first);
  double st = 0.0, sy = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    st += t[i];
    sy += y[i];
  }
  const double tm = st / m, ym = sy / m;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    stt += (t[i] - tm) * (t[i] - tm);
    sty += (t[i] - tm) * (y[i] - ym);
  }
  fit.slope = sty / stt;
  fit.intercept = ym - fit.slope * tm;
  double ss = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * t[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

std::vector<double> log_norm_series(const DiscreteSystem& sys, const Eigen::VectorXd& p, const GammaOptions& opts) {
  const int d = sys.dim;
  const bool weighted = opts.norm_weight.size() > 0;
  const Eigen::MatrixXd w = weighted ? opts.norm_weight : Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd w_inv = w.inverse();
  auto tangent = [&](const State& q) {
    return weighted ? Eigen::MatrixXd(w * sys.jacobian(q) * w_inv) : sys.jacobian(q);
  };

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(opts.horizon));
  State q = p;
  if (opts.accumulation == Accumulation::Direct) {
    if (opts.horizon > 50) throw Error(ErrorKind::JacobianOverflow, "direct products are limited to 50 steps");
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
    for (int n = 0; n < opts.horizon; ++n) {
      m = tangent(q) * m;
      q = sys.step(q);
      if (!m.allFinite()) throw Error(ErrorKind::JacobianOverflow, "Jacobian product overflowed");
      out.push_back(std::log(spectral_norm(m)));
    }
    return out;
  }
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(d, d);
  double log_scale = 0.0;
  for (int n = 0; n < opts.horizon; ++n) {
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(tangent(q) * basis);
    basis = qr.householderQ();
    Eigen::MatrixXd step_r = qr.matrixQR();
    for (int i = 1; i < d; ++i) step_r.row(i).head(i).setZero();
    r = step_r * r;
    const double s = r.cwiseAbs().maxCoeff();
    if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorKind::JacobianOverflow, "degenerate cocycle");
    r /= s;
    log_scale += std::log(s);
    q = sys.step(q);
    out.push_back(log_scale + std::log(spectral_norm(r)));
  }
  return out;
}

GrowthEstimate gamma_plus(const DiscreteSystem& sys, const GammaOptions& opts) {
  if (opts.horizon < 8) throw Error(ErrorKind::InvalidInput, "horizon must be at least 8");
  const std::vector<State> states = sample_states(sys, opts.states, opts.seed);
  const auto per_state = [&](std::size_t i) { return log_norm_series(sys, states[i], opts); };
  const auto horizon = static_cast<std::size_t>(opts.horizon);
  std::vector<double> series = opts.parallel ? cocycle_max_parallel(states.size(), horizon, per_state)
                                             : cocycle_max_serial(states.size(), horizon, per_state);
  std::vector<double> times(horizon);
  for (std::size_t n = 0; n < horizon; ++n) times[n] = static_cast<double>(n + 1) * sys.dt;
  const SlopeFit fit = tail_slope(times, series, tail_start(horizon));
  GrowthEstimate est;
  est.value = fit.slope;
  est.horizon = static_cast<double>(horizon) * sys.dt;
  est.samples = states.size();
  est.fit_residual = fit.residual;
  est.series = std::move(series);
  return est;
}

GrowthEstimate gamma(const DiscreteSystem& sys, const GammaOptions& opts) {
  GrowthEstimate forward = gamma_plus(sys, opts);
  if (!sys.invertible()) return forward;
  GrowthEstimate backward = gamma_plus(inverse(sys), opts);
  return backward.value > forward.value ? backward : forward;
}

std::vector<PropertyCheck> gamma_properties_suite(const GammaOptions& opts, double tol) {
  const DiscreteSystem cat = cat_map();
  const DiscreteSystem rot = torus_rotation(0.5 * (std::sqrt(5.0) - 1.0), std::sqrt(2.0) - 1.0);
  const double g_cat = gamma(cat, opts).value;
  const double g_rot = gamma(rot, opts).value;
  std::vector<PropertyCheck> out;
  auto equal = [&](std::string name, double lhs, double rhs) {
    out.push_back({std::move(name), lhs, rhs, tol, std::abs(lhs - rhs) <= tol});
  };
  auto at_most = [&](std::string name, double lhs, double rhs) {
    out.push_back({std::move(name), lhs, rhs, tol, lhs <= rhs + tol});
  };

  equal("conjugacy", gamma(conjugate(cat, shear(0.1)), opts).value, g_cat);
  const DiscreteSystem both = disjoint_union(cat, rot);
  const DiscreteSystem rot_piece = restricted(
      both,
      [&rot](Rng& rng) {
        Eigen::VectorXd p(3);
        p(0) = 1.0;
        p.tail(2) = rot.sample(rng);
        return p;
      },
      "rotation");
  const double g_both = gamma(both, opts).value;
  at_most("restriction", gamma(rot_piece, opts).value, g_both);
  equal("decomposition", g_both, std::max(g_cat, g_rot));
  equal("power 2", gamma(power(cat, 2), opts).value, 2.0 * g_cat);
  equal("power -1", gamma(power(cat, -1), opts).value, g_cat);
  equal("power -3", gamma(power(cat, -3), opts).value, 3.0 * g_cat);
  equal("product", gamma(product(cat, circle_rotation(std::sqrt(3.0) - 1.0)), opts).value, std::max(g_cat, 0.0));
  return out;
}

HtopResult htop_separated(const DiscreteSystem& sys, const std::vector<double>& deltas, int horizon,
                          const HtopOptions& opts) {
  if (horizon < 2) throw Error(ErrorKind::InvalidInput, "horizon must be at least 2");
  if (deltas.empty()) throw Error(ErrorKind::InvalidInput, "need at least one δ");
  const std::size_t nc = opts.candidates;
  const auto steps = static_cast<std::size_t>(horizon);

  // traj[k][i] = φ^k(p_i), k < horizon.
  std::vector<std::vector<State>> traj(steps);
  traj[0] = sample_states(sys, nc, opts.seed);
  for (std::size_t k = 1; k < steps; ++k) {
    traj[k].resize(nc);
    const auto n = static_cast<std::int64_t>(nc);
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (opts.parallel)
    for (std::int64_t ii = 0; ii < n; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      traj[k][i] = sys.step(traj[k - 1][i]);
    }
  }

  std::vector<std::vector<double>> raw(deltas.size(), std::vector<double>(steps, 0.0));
  for (std::size_t di = 0; di < deltas.size(); ++di) {
    const double delta = deltas[di];
    for (std::size_t n = 1; n <= steps; ++n) {
      const int copies = n == 1 ? 1 : 2;
      const CellGrid grid(sys, delta, copies);
      auto embed = [&](std::size_t i) {
        if (copies == 1) return traj[0][i];
        State e(2 * sys.dim);
        e << traj[0][i], traj[n - 1][i];
        return e;
      };
      // Cells hold accepted points only: a candidate is accepted when no
      // earlier accepted point is (n, δ)-close to it.
      std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells;
      std::vector<std::vector<std::int64_t>> keys(nc);
      for (std::size_t i = 0; i < nc; ++i) keys[i] = grid.key(embed(i));
      auto neighbours = [&](std::size_t i, std::vector<std::size_t>& list) {
        std::vector<std::vector<std::int64_t>> options;
        for (std::size_t k = 0; k < keys[i].size(); ++k) options.push_back(grid.around(k, keys[i][k]));
        std::vector<std::size_t> idx(options.size(), 0);
        std::vector<std::int64_t> probe(options.size());
        while (true) {
          for (std::size_t k = 0; k < options.size(); ++k) probe[k] = options[k][idx[k]];
          const auto it = cells.find(cell_hash(probe));
          if (it != cells.end()) list.insert(list.end(), it->second.begin(), it->second.end());
          std::size_t k = 0;
          while (k < idx.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
          if (k == idx.size()) break;
        }
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
      };
      auto close = [&](std::size_t i, std::size_t j) {
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          worst = std::max(worst, sys.metric(traj[k][i], traj[k][j]));
          if (worst > delta) break;
        }
        return worst;
      };
      std::size_t count = 0;
      std::size_t pairs = 0;
      constexpr std::size_t kBlock = 2048;
      for (std::size_t start = 0; start < nc; start += kBlock) {
        const std::size_t stop = std::min(nc, start + kBlock);
        Adjacency candidates(stop - start);
        for (std::size_t i = start; i < stop; ++i) {
          neighbours(i, candidates[i - start]);
          pairs += candidates[i - start].size();
        }
        if (pairs > opts.pair_budget) throw Error(ErrorKind::BudgetExceeded, "separated-set pair budget exceeded");
        const PairDistance dist = [&](std::size_t local, std::size_t j) { return close(start + local, j); };
        const Adjacency conflicts = opts.parallel ? conflict_scan_parallel(candidates, dist, delta)
                                                  : conflict_scan_serial(candidates, dist, delta);
        // Survivors still have to be checked against acceptances from this block.
        std::vector<std::size_t> near;
        for (std::size_t i = start; i < stop; ++i) {
          if (!conflicts[i - start].empty()) continue;
          near.clear();
          neighbours(i, near);
          bool free = true;
          for (std::size_t j : near) {
            if (j >= start && close(i, j) <= delta) {
              free = false;
              break;
            }
          }
          if (!free) continue;
          cells[cell_hash(keys[i])].push_back(i);
          ++count;
        }
      }
      raw[di][n - 1] = static_cast<double>(count);
    }
  }

  // Monotone envelope over larger δ and shorter horizons.
  HtopResult out;
  out.deltas = deltas;
  out.counts = raw;
  for (std::size_t a = 0; a < deltas.size(); ++a) {
    for (std::size_t n = 0; n < steps; ++n) {
      double best = 0.0;
      for (std::size_t b = 0; b < deltas.size(); ++b) {
        if (deltas[b] < deltas[a]) continue;
        for (std::size_t m = 0; m <= n; ++m) best = std::max(best, raw[b][m]);
      }
      out.counts[a][n] = best;
    }
  }

  std::vector<double> times(steps);
  for (std::size_t n = 0; n < steps; ++n) times[n] = static_cast<double>(n + 1) * sys.dt;
  out.estimate.value = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < deltas.size(); ++a) {
    std::vector<double> logs(steps);
    for (std::size_t n = 0; n < steps; ++n) logs[n] = std::log(out.counts[a][n]);
    const SlopeFit fit = tail_slope(times, logs, tail_start(steps));
    out.slopes.push_back(fit.slope);
    if (fit.slope > out.estimate.value) {
      out.estimate.value = fit.slope;
      out.estimate.fit_residual = fit.residual;
      out.estimate.delta = deltas[a];
      out.estimate.series = logs;
    }
  }
  out.estimate.horizon = static_cast<double>(steps) * sys.dt;
  out.estimate.samples = nc;
  return out;
}

double BallGeometry::ball_volume(double radius) const {
  const double r = radius / scale;
  const double area = kind == BallGeometryKind::Hyperbolic ? 2.0 * std::numbers::pi * (std::cosh(r) - 1.0)
                                                           : std::numbers::pi * r * r;
  return scale * scale * area;
}

GrowthEstimate hvol_ball_growth(const BallGeometry& geometry, double r_max, int samples) {
  if (!(r_max > 0.0) || samples < 4) throw Error(ErrorKind::InvalidInput, "need r_max > 0 and samples ≥ 4");
  std::vector<double> radii, logs;
  for (int i = 0; i < samples; ++i) {
    const double r = 0.5 * r_max * (1.0 + static_cast<double>(i) / (samples - 1));
    radii.push_back(r);
    logs.push_back(std::log(geometry.ball_volume(r)));
  }
  const SlopeFit fit = tail_slope(radii, logs, 0);
  GrowthEstimate est;
  est.value = fit.slope;
  est.horizon = r_max;
  est.samples = static_cast<std::size_t>(samples);
  est.fit_residual = fit.residual;
  est.series = std::move(logs);
  return est;
}

double ball_subadditivity_violation(const BallGeometry& geometry, double r_max, int grid) {
  constexpr double kB = 2.0;
  const double v1 = geometry.ball_volume(1.0);
  auto f = [&](double r) { return std::log(geometry.ball_volume(r + kB) / v1); };
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    for (int j = 0; j <= grid; ++j) {
      const double r = r_max * i / grid;
      const double s = r_max * j / grid;
      worst = std::max(worst, f(r + s) - f(r) - f(s));
    }
  }
  return worst;
}

double growth_gap_radius(double h, double eps, double delta, double threshold, double r_max) {
  const BallGeometry hyp;
  for (double r = 0.0; r <= r_max; r += 0.01) {
    const double ratio = (hyp.ball_volume(r + delta) - hyp.ball_volume(r)) / std::exp((h - eps) * r);
    if (ratio > threshold) return r;
  }
  return -1.0;
}

std::vector<InequalityReport> manning_check(const GrowthEstimate& h_top, const GrowthEstimate& h_vol, int dim,
                                            const GrowthEstimate* gamma_plus_est) {
  std::vector<InequalityReport> out;
  const double slack = h_top.fit_residual + h_vol.fit_residual + 2e-2;
  out.push_back({"htop >= hvol", h_top.value, h_vol.value, slack, h_top.value >= h_vol.value - slack});
  if (gamma_plus_est != nullptr && dim > 0) {
    const double rhs = dim * gamma_plus_est->value;
    const double s2 = h_top.fit_residual + gamma_plus_est->fit_residual + 2e-2;
    out.push_back({"htop <= dim*gamma+", h_top.value, rhs, s2, h_top.value <= rhs + s2});
  }
  return out;
}

TimeChangeReport time_change_bound(const DiscreteSystem& base_flow, const DiscreteSystem& changed_flow, double f_sup,
                                   const GammaOptions& opts, int htop_horizon, const std::vector<double>& deltas,
                                   const HtopOptions& hopts, double tol) {
  TimeChangeReport rep;
  rep.f_sup = f_sup;
  rep.gamma_base = gamma_plus(base_flow, opts).value;
  rep.gamma_changed = gamma_plus(changed_flow, opts).value;
  rep.gamma_bound = rep.gamma_changed <= f_sup * rep.gamma_base + tol;
  if (htop_horizon > 0) {
    rep.htop_base = htop_separated(base_flow, deltas, htop_horizon, hopts).estimate.value;
    rep.htop_changed = htop_separated(changed_flow, deltas, htop_horizon, hopts).estimate.value;
    rep.htop_bound = rep.htop_changed <= f_sup * rep.htop_base + tol;
  } else {
    rep.htop_bound = true;
  }
  return rep;
}

}  // namespace entropia
