#include "entropia/reeb_collapse.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "entropia/error.hpp"

namespace entropia {

namespace {

using boost::math::quadrature::gauss_kronrod;

// Peak of smoothstep7', attained at 1/2.
constexpr double kSmoothstep7Peak = 140.0 / 64.0;

double wrap_angle(double a) { return wrap(a, kTwoPi); }

template <class F> double integrate_pieces(const F& f, const std::vector<double>& pts) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] <= pts[i]) continue;
    total += gauss_kronrod<double, 61>::integrate(f, pts[i], pts[i + 1], 15, 1e-14);
  }
  return total;
}

// Normalizes a mapping-torus point so θ ∈ [0, 2π), applying the gluing once
// per turn, and reduces x.
Eigen::Vector3d normalize_mt(const MappingTorusSpec& spec, Eigen::Vector3d p) {
  const double turns = std::floor(p(0) / kTwoPi);
  if (turns != 0.0) {
    p(0) -= kTwoPi * turns;
    p(2) += turns * spec.tau(p(1));
  }
  p(2) = wrap_angle(p(2));
  return p;
}

Eigen::Vector3d rk4_step(const std::function<Eigen::Vector3d(const Eigen::Vector3d&)>& field,
                         const Eigen::Vector3d& y, double h) {
  const Eigen::Vector3d k1 = field(y);
  const Eigen::Vector3d k2 = field(y + 0.5 * h * k1);
  const Eigen::Vector3d k3 = field(y + 0.5 * h * k2);
  const Eigen::Vector3d k4 = field(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Worst value of `margin` over a grid³ sampling of the chart, then refined by
// cyclic golden-section search inside the neighbouring cells.
double grid_min(const MappingTorusSpec& spec, int grid, bool staggered,
                const std::function<double(const Eigen::Vector3d&)>& margin) {
  const double dth = kTwoPi / grid;
  const double dr = (spec.r_outer - spec.r_inner) / (grid - 1);
  const double off = staggered ? 0.5 : 0.0;
  double best = std::numeric_limits<double>::infinity();
  Eigen::Vector3d arg = Eigen::Vector3d::Zero();
  const int r_count = staggered ? grid - 1 : grid;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < r_count; ++j) {
      for (int k = 0; k < grid; ++k) {
        const Eigen::Vector3d p((i + off) * dth, spec.r_inner + (j + off) * dr, (k + off) * dth);
        const double v = margin(p);
        if (v < best) {
          best = v;
          arg = p;
        }
      }
    }
  }
  const std::array<double, 3> width = {dth, dr, dth};
  const std::array<double, 3> lo_bound = {-std::numeric_limits<double>::infinity(), spec.r_inner,
                                          -std::numeric_limits<double>::infinity()};
  const std::array<double, 3> hi_bound = {std::numeric_limits<double>::infinity(), spec.r_outer,
                                          std::numeric_limits<double>::infinity()};
  constexpr double kGolden = 0.6180339887498949;
  for (int sweep = 0; sweep < 3; ++sweep) {
    for (int c = 0; c < 3; ++c) {
      double a = std::max(arg(c) - width[c], lo_bound[c]);
      double b = std::min(arg(c) + width[c], hi_bound[c]);
      auto at = [&](double v) {
        Eigen::Vector3d q = arg;
        q(c) = v;
        return margin(q);
      };
      double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
      double f1 = at(x1), f2 = at(x2);
      for (int it = 0; it < 60 && b - a > 1e-12; ++it) {
        if (f1 < f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - kGolden * (b - a);
          f1 = at(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + kGolden * (b - a);
          f2 = at(x2);
        }
      }
      const double xm = f1 < f2 ? x1 : x2;
      const double fm = std::min(f1, f2);
      if (fm < best) {
        best = fm;
        arg(c) = xm;
      }
    }
  }
  return best;
}

// Largest s in (0, hi] with ok(s), to absolute tolerance tol; 0 if none.
double bisect_largest(const std::function<bool(double)>& ok, double hi, double tol) {
  if (ok(hi)) return hi;
  double lo = 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

void MappingTorusSpec::validate() const {
  if (!(r_inner < twist_lo && twist_lo < twist_hi && twist_hi < r_outer)) {
    throw Error(ErrorKind::InvalidInput, "twist window must lie strictly inside the annulus");
  }
  if (!(0.0 < chi_lo && chi_lo < chi_hi && chi_hi < kTwoPi)) {
    throw Error(ErrorKind::InvalidInput, "cutoff window must lie strictly inside (0, 2π)");
  }
  if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorKind::InvalidInput, "s must be positive");
}

MappingTorusSpec mapping_torus_from_json(const nlohmann::json& j) {
  MappingTorusSpec spec;
  try {
    spec.twists = j.value("twists", spec.twists);
    spec.r_inner = j.value("r_inner", spec.r_inner);
    spec.r_outer = j.value("r_outer", spec.r_outer);
    if (j.contains("twist_window")) {
      spec.twist_lo = j.at("twist_window").at(0).get<double>();
      spec.twist_hi = j.at("twist_window").at(1).get<double>();
    }
    if (j.contains("chi_window")) {
      spec.chi_lo = j.at("chi_window").at(0).get<double>();
      spec.chi_hi = j.at("chi_window").at(1).get<double>();
    }
    spec.s = j.value("s", spec.s);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, e.what());
  }
  spec.validate();
  return spec;
}

nlohmann::json mapping_torus_to_json(const MappingTorusSpec& spec) {
  return {{"twists", spec.twists},
          {"r_inner", spec.r_inner},
          {"r_outer", spec.r_outer},
          {"twist_window", {spec.twist_lo, spec.twist_hi}},
          {"chi_window", {spec.chi_lo, spec.chi_hi}},
          {"s", spec.s}};
}

double contact_density(const Eigen::Vector3d& a, const Eigen::Matrix3d& da) {
  const double c0 = da(2, 1) - da(1, 2);
  const double c1 = da(0, 2) - da(2, 0);
  const double c2 = da(1, 0) - da(0, 1);
  return -(a(0) * c0 + a(1) * c1 + a(2) * c2);
}

Eigen::Matrix3d exterior_derivative(const Eigen::Matrix3d& da) { return da.transpose() - da; }

FormJet mapping_torus_form(const MappingTorusSpec& spec, const Eigen::Vector3d& p) {
  using D = Dual<3>;
  const auto a = mapping_torus_alpha(spec, D::variable(p(0), 0), D::variable(p(1), 1), D::variable(p(2), 2));
  FormJet out;
  for (int i = 0; i < 3; ++i) {
    out.a(i) = a[i].v;
    for (int j = 0; j < 3; ++j) out.da(i, j) = a[i].d[j];
  }
  return out;
}

FormJet solid_torus_form(const ProfileFunctions& prof, const Eigen::Vector3d& p) {
  const ProfileSample q = prof.eval(p(1));
  const double kappa = prof.kappa();
  FormJet out;
  out.a = Eigen::Vector3d(q.g, 0.0, kappa * q.f);
  out.da.setZero();
  out.da(0, 1) = q.gp;
  out.da(2, 1) = kappa * q.fp;
  return out;
}

double mapping_torus_density(const MappingTorusSpec& spec, double theta, double r) {
  return spec.s * (1.0 - spec.s * spec.twist_density(wrap_angle(theta), r));
}

double solid_torus_density(const ProfileFunctions& prof, double r) { return prof.kappa() * prof.h(r); }

Eigen::Vector3d mapping_torus_reeb(const MappingTorusSpec& spec, const Eigen::Vector3d& p) {
  const double theta = wrap_angle(p(0));
  const double r = p(1);
  const double denom = 1.0 - spec.s * spec.twist_density(theta, r);
  return Eigen::Vector3d(1.0, 0.0, -spec.chi_d(theta) * spec.lambda_psi(r)) / denom;
}

ContactThreshold contact_threshold(const MappingTorusSpec& spec, int grid, double tol, double cap) {
  spec.validate();
  if (grid < 4) throw Error(ErrorKind::GridTooCoarse, "grid needs at least 4 points per axis");
  ContactThreshold out;
  out.grid = grid;

  auto density_margin = [&](double s) {
    const MappingTorusSpec at = spec.with_s(s);
    return [at](const Eigen::Vector3d& p) {
      const FormJet j = mapping_torus_form(at, p);
      return contact_density(j.a, j.da) / at.s;
    };
  };
  auto contact_ok = [&](double s) { return grid_min(spec, grid, false, density_margin(s)) > 0.0; };

  out.s0 = bisect_largest(contact_ok, cap, tol);
  out.capped = out.s0 == cap;
  if (out.s0 <= 0.0) throw Error(ErrorKind::GridTooCoarse, "α_s ∧ dα_s changes sign for every sampled s");
  if (grid_min(spec, grid, true, density_margin(out.s0)) <= 0.0) {
    throw Error(ErrorKind::GridTooCoarse, "contact condition fails between grid points at s0");
  }

  auto speed_ok = [&](double s) {
    const MappingTorusSpec at = spec.with_s(s);
    return grid_min(spec, grid, false, [&at](const Eigen::Vector3d& p) {
             const double d = 1.0 - at.s * at.twist_density(wrap_angle(p(0)), p(1));
             if (d <= 0.0) return -1.0;
             const double rate = 1.0 / d;
             return std::min(rate - 0.5, 2.0 - rate);
           }) >= 0.0;
  };
  out.s1 = bisect_largest(speed_ok, out.s0, tol);
  return out;
}

namespace {

// Lifted end angle Θ solving (Θ − θ0) − K(χ̃(Θ) − χ̃(θ0)) = t with
// K = s(2 − r)²τ'(r), for a normalized start point.
double lifted_end_angle(const MappingTorusSpec& spec, const Eigen::Vector3d& p, double t) {
  const double theta0 = p(0);
  const double r = p(1);
  const double k = spec.s * (2.0 - r) * spec.lambda_psi(r);
  const double chi_peak = kSmoothstep7Peak / (spec.chi_hi - spec.chi_lo);
  const double q_lo = std::min(0.0, k * chi_peak);
  const double q_hi = std::max(0.0, k * chi_peak);
  if (q_hi >= 1.0) throw Error(ErrorKind::InfeasibleParameters, "s exceeds the contact threshold");

  const double chi0 = spec.chi_lifted(theta0);
  auto residual = [&](double big) { return (big - theta0) - k * (spec.chi_lifted(big) - chi0) - t; };
  auto slope = [&](double big) { return 1.0 - k * spec.chi_d(wrap_angle(big)); };

  double a = theta0 + (t >= 0 ? t / (1.0 - q_lo) : t / (1.0 - q_hi));
  double b = theta0 + (t >= 0 ? t / (1.0 - q_hi) : t / (1.0 - q_lo));
  double big = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    const double f = residual(big);
    if (f == 0.0) break;
    if (f > 0.0) {
      b = big;
    } else {
      a = big;
    }
    double next = big - f / slope(big);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    const double step = next - big;
    big = next;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(big))) break;
  }
  return big;
}

}  // namespace

FlowState mapping_torus_flow(const MappingTorusSpec& spec, const Eigen::Vector3d& p_in, double t) {
  const Eigen::Vector3d p = normalize_mt(spec, p_in);
  const double r = p(1);
  const double big = lifted_end_angle(spec, p, t);
  const double turns = std::floor(big / kTwoPi);
  FlowState out;
  out.chart = Chart::MappingTorus;
  out.time = t;
  out.coords(0) = big - kTwoPi * turns;
  out.coords(1) = r;
  out.coords(2) =
      wrap_angle(p(2) - spec.lambda_psi(r) * (spec.chi_lifted(big) - spec.chi_lifted(p(0))) + turns * spec.tau(r));
  return out;
}

Eigen::Matrix3d mapping_torus_jacobian(const MappingTorusSpec& spec, const Eigen::Vector3d& p_in, double t) {
  using D = Dual<3>;
  const Eigen::Vector3d p = normalize_mt(spec, p_in);
  const double big = lifted_end_angle(spec, p, t);
  const double turns = std::floor(big / kTwoPi);
  const double k0 = spec.s * (2.0 - p(1)) * spec.lambda_psi(p(1));

  // One Newton step on dual inputs carries the exact derivatives of Θ.
  const D th0 = D::variable(p(0), 0);
  const D r = D::variable(p(1), 1);
  const D x0 = D::variable(p(2), 2);
  const D k = spec.s * (2.0 - r) * spec.lambda_psi(r);
  const D chi0 = spec.chi_lifted(th0);
  const D res = (big - th0) - k * (spec.chi_lifted(big) - chi0) - t;
  const D big_d = D(big) - res / (1.0 - k0 * spec.chi_d(wrap_angle(big)));

  const D theta = big_d - kTwoPi * turns;
  const D x = x0 - spec.lambda_psi(r) * (spec.chi_lifted(big_d) - chi0) + turns * spec.tau(r);

  Eigen::Matrix3d jac;
  for (int j = 0; j < 3; ++j) {
    jac(0, j) = theta.d[j];
    jac(1, j) = r.d[j];
    jac(2, j) = x.d[j];
  }
  return jac;
}

FlowState mapping_torus_flow_rk4(const MappingTorusSpec& spec, const Eigen::Vector3d& p_in, double t, double step) {
  Eigen::Vector3d y = normalize_mt(spec, p_in);
  const auto field = [&spec](const Eigen::Vector3d& q) { return mapping_torus_reeb(spec, q); };
  const auto n = static_cast<long>(std::ceil(std::abs(t) / step));
  const double h = n > 0 ? t / n : 0.0;
  for (long i = 0; i < n; ++i) {
    y = rk4_step(field, y, h);
    if (y(0) >= kTwoPi) {
      y(0) -= kTwoPi;
      y(2) += spec.tau(y(1));
    } else if (y(0) < 0.0) {
      y(0) += kTwoPi;
      y(2) -= spec.tau(y(1));
    }
  }
  FlowState out;
  out.chart = Chart::MappingTorus;
  out.time = t;
  out.coords = Eigen::Vector3d(y(0), y(1), wrap_angle(y(2)));
  return out;
}

ReturnResult return_map_and_time(const MappingTorusSpec& spec, const Eigen::Vector2d& start, double step) {
  const auto field = [&spec](const Eigen::Vector3d& q) { return mapping_torus_reeb(spec, q); };
  Eigen::Vector3d y(0.0, start(0), start(1));
  double t = 0.0;
  constexpr double kLimit = 4.0 * kTwoPi;
  while (true) {
    if (t > kLimit) throw Error(ErrorKind::NoReturn, "no return to the section within 8π");
    const Eigen::Vector3d next = rk4_step(field, y, step);
    if (next(0) < kTwoPi) {
      y = next;
      t += step;
      continue;
    }
    double h = (kTwoPi - y(0)) / field(y)(0);
    Eigen::Vector3d end = y;
    for (int it = 0; it < 8; ++it) {
      end = rk4_step(field, y, h);
      const double miss = kTwoPi - end(0);
      if (std::abs(miss) < 1e-15) break;
      h += miss / field(end)(0);
    }
    t += h;
    ReturnResult out;
    out.time = t;
    out.image = Eigen::Vector2d(end(1), wrap_angle(end(2) + spec.tau(end(1))));
    if (out.time < std::numbers::pi || out.time > 2.0 * kTwoPi) {
      throw Error(ErrorKind::InfeasibleParameters,
                  "return time " + std::to_string(out.time) + " outside [π, 4π]; s exceeds s1");
    }
    return out;
  }
}

ReturnResult return_map_closed_form(const MappingTorusSpec& spec, const Eigen::Vector2d& start) {
  const double r = start(0);
  const double lp = spec.lambda_psi(r);
  ReturnResult out;
  out.time = kTwoPi - spec.s * (2.0 - r) * lp;
  out.image = Eigen::Vector2d(r, wrap_angle(start(1) - lp + spec.tau(r)));
  return out;
}

Eigen::Vector3d solid_torus_reeb(const ProfileFunctions& prof, const Eigen::Vector3d& p) {
  const double r = p(1);
  const double kappa = prof.kappa();
  const ProfileSample q = prof.eval(std::max(r, 0.0));
  if (r < 1e-12) {
    // f'(0) = g'(0) = h(0) = 0; take the ratios of next-order terms.
    const double hp = q.hp();
    return Eigen::Vector3d(-q.fpp / hp, 0.0, q.gpp / (kappa * hp));
  }
  const double h = q.h();
  return Eigen::Vector3d(-q.fp / h, 0.0, q.gp / (kappa * h));
}

FlowState solid_torus_flow(const ProfileFunctions& prof, const Eigen::Vector3d& p, double t) {
  const Eigen::Vector3d v = solid_torus_reeb(prof, p);
  FlowState out;
  out.chart = Chart::SolidTorus;
  out.time = t;
  out.coords = Eigen::Vector3d(wrap_angle(p(0) + v(0) * t), p(1), wrap_angle(p(2) + v(2) * t));
  return out;
}

Eigen::Matrix3d solid_torus_jacobian(const ProfileFunctions& prof, const Eigen::Vector3d& p, double t) {
  Eigen::Matrix3d jac = Eigen::Matrix3d::Identity();
  const double r = p(1);
  if (r < 1e-12) return jac;
  const ProfileSample q = prof.eval(r);
  const double h = q.h();
  const double hp = q.hp();
  const double rate_theta_d = -(q.fpp * h - q.fp * hp) / (h * h);
  const double rate_x_d = (q.gpp * h - q.gp * hp) / (prof.kappa() * h * h);
  jac(0, 1) = rate_theta_d * t;
  jac(2, 1) = rate_x_d * t;
  return jac;
}

FlowState solid_torus_flow_rk4(const ProfileFunctions& prof, const Eigen::Vector3d& p, double t, double step) {
  const auto field = [&prof](const Eigen::Vector3d& q) { return solid_torus_reeb(prof, q); };
  Eigen::Vector3d y = p;
  const auto n = static_cast<long>(std::ceil(std::abs(t) / step));
  const double h = n > 0 ? t / n : 0.0;
  for (long i = 0; i < n; ++i) {
    y = rk4_step(field, y, h);
    y(0) = wrap_angle(y(0));
    y(2) = wrap_angle(y(2));
  }
  FlowState out;
  out.chart = Chart::SolidTorus;
  out.time = t;
  out.coords = y;
  return out;
}

double mapping_torus_volume(const MappingTorusSpec& spec) {
  spec.validate();
  const std::vector<double> r_pts = {spec.r_inner, spec.twist_lo, spec.twist_hi, spec.r_outer};
  const std::vector<double> th_pts = {0.0, spec.chi_lo, spec.chi_hi, kTwoPi};
  const auto inner = [&](double r) {
    return integrate_pieces([&](double th) { return mapping_torus_density(spec, th, r); }, th_pts);
  };
  return kTwoPi * integrate_pieces(inner, r_pts);
}

double solid_torus_volume(const ProfileFunctions& prof) {
  return prof.kappa() * kTwoPi * kTwoPi * prof.integral_h();
}

CollapseTable collapse_volumes(const MappingTorusSpec& spec, const std::vector<double>& s_list, int return_samples,
                               double s1) {
  spec.validate();
  if (s_list.size() < 2) throw Error(ErrorKind::InvalidInput, "need at least two values of s");
  if (s1 <= 0.0) s1 = contact_threshold(spec).s1;

  CollapseTable table;
  for (double s : s_list) {
    if (!(s > 0.0 && s <= s1)) {
      throw Error(ErrorKind::InfeasibleParameters, "s = " + std::to_string(s) + " outside (0, s1]");
    }
    const MappingTorusSpec at = spec.with_s(s);
    CollapseRow row;
    row.s = s;
    row.vol_mt = mapping_torus_volume(at);
    row.vol_st = 2.0 * solid_torus_volume(ProfileFunctions::dim3(s));
    row.vol_total = row.vol_mt + row.vol_st;
    row.t_min = std::numeric_limits<double>::infinity();
    row.t_max = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < return_samples; ++j) {
      const double r = spec.r_inner + (spec.r_outer - spec.r_inner) * (j + 0.5) / return_samples;
      const double t = return_map_and_time(at, Eigen::Vector2d(r, 0.0)).time;
      row.t_min = std::min(row.t_min, t);
      row.t_max = std::max(row.t_max, t);
    }
    table.rows.push_back(row);
  }

  const auto n = static_cast<Eigen::Index>(table.rows.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd vols(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = table.rows[static_cast<std::size_t>(i)].s;
    design(i, 0) = s;
    design(i, 1) = s * s;
    vols(i) = table.rows[static_cast<std::size_t>(i)].vol_total;
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(vols);
  table.slope = coef(0);
  table.curvature = coef(1);
  const double page_area = kTwoPi * (spec.r_outer - spec.r_inner);
  table.predicted_slope =
      kTwoPi * page_area + 2.0 * kTwoPi * kTwoPi * ProfileFunctions::dim3(1.0).integral_h();
  table.residual = (design * coef - vols).cwiseAbs().maxCoeff() / vols.cwiseAbs().maxCoeff();
  table.slope_error = std::abs(table.slope - table.predicted_slope) / table.predicted_slope;
  if (table.residual > 0.01) {
    throw Error(ErrorKind::FitPoor, "quadratic fit residual " + std::to_string(table.residual) + " exceeds 1%");
  }
  return table;
}

VolumeBoundCheck volume_bound_check(const MappingTorusSpec& spec, double r_eps, double eps) {
  spec.validate();
  const ProfileFunctions prof = build_profiles(r_eps, spec.s, ProfileFamily::Higher, 0.5 * eps);
  VolumeBoundCheck out;
  out.vol_mt = mapping_torus_volume(spec);
  out.vol_st = 2.0 * solid_torus_volume(prof);
  out.total = out.vol_mt + out.vol_st;
  const double d_lambda = kTwoPi * (spec.r_outer - spec.r_inner);
  out.bound = 2.0 * kTwoPi * spec.s * d_lambda + 6.0 * kTwoPi * eps;
  out.literal_bound = 2.0 * spec.s * d_lambda + 6.0 * kTwoPi * eps;
  out.holds = out.total <= out.bound;
  return out;
}

Normalized normalize_form(double vol, int n, double gamma_or_h) {
  if (!(vol > 0.0)) throw Error(ErrorKind::NonPositiveVolume, "volume must be positive to normalize");
  if (n < 1) throw Error(ErrorKind::InvalidInput, "n must be at least 1");
  const double p = 1.0 / (n + 1);
  return {std::pow(vol, -p), gamma_or_h * std::pow(vol, p)};
}

}  // namespace entropia
