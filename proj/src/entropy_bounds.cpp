#include "entropia/entropy_bounds.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <numbers>

#include "entropia/error.hpp"
#include "entropia/finsler_volume.hpp"
#include "entropia/special.hpp"

namespace entropia {

namespace {

using boost::math::quadrature::gauss_kronrod;

void require_genus(int k) {
  if (k < 2) throw Error(ErrorKind::GenusTooSmall, "genus must be at least 2");
}

double gk(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  return gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14);
}

// Upper limit of coordinate `depth` given the earlier coordinates.
double upper_limit(WeylRegion region, double sum, double sum_sq) {
  switch (region) {
    case WeylRegion::Ball: return std::sqrt(std::max(0.0, 1.0 - sum_sq));
    case WeylRegion::CrossPolytope: return std::max(0.0, 1.0 - sum);
    case WeylRegion::Cube: return 1.0;
  }
  return 0.0;
}

double nested(int remaining, WeylRegion region, double prod, double sum, double sum_sq) {
  const double hi = upper_limit(region, sum, sum_sq);
  if (remaining == 1) {
    // Innermost factor integrates in closed form: ∫₀^hi x dx.
    return prod * 0.5 * hi * hi;
  }
  return gk([&](double x) { return nested(remaining - 1, region, prod * x, sum + x, sum_sq + x * x); }, 0.0, hi);
}

// ∫ over the hexagon with apothem a (one vertex on the x-axis) of r^p dA.
double hexagon_moment(double apothem, double p) {
  const double sector = std::numbers::pi / 3.0;
  double total = 0.0;
  for (int s = 0; s < 6; ++s) {
    const double mid = sector * s + sector / 2.0;
    total += gk(
        [&](double phi) {
          const double edge = apothem / std::cos(phi - mid);
          return gk([&](double r) { return std::pow(r, p + 1.0); }, 0.0, edge);
        },
        sector * s, sector * (s + 1));
  }
  return total;
}

}  // namespace

double katok_bound(int genus, bool orientable) {
  require_genus(genus);
  const double k1 = genus - 1.0;
  return orientable ? 2.0 * std::sqrt(std::numbers::pi * k1) : std::sqrt(2.0 * std::numbers::pi * k1);
}

double finsler_floor(int genus, bool reversible) {
  require_genus(genus);
  const double k1 = genus - 1.0;
  return reversible ? 2.0 * std::sqrt(2.0 * k1) : std::sqrt(2.0 * k1);
}

double general_floor(int n, double h_vol, bool reversible) {
  if (h_vol < 0.0) throw Error(ErrorKind::InvalidInput, "volume entropy must be non-negative");
  return (reversible ? 2.0 : 1.0) * c_n(n) * h_vol;
}

VerovicConstants verovic_constants(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be positive");
  const double two_k = 2.0 * k;
  VerovicConstants out;
  out.c_bh = std::exp((log_factorial(2 * k) - log_factorial(k)) / two_k) / std::sqrt(two_k);
  out.c_ht = std::exp(log_factorial(k) / two_k) / std::sqrt(static_cast<double>(k));
  return out;
}

double weyl_closed_form(int k, WeylRegion region) {
  switch (region) {
    case WeylRegion::Ball: return std::exp(-k * std::log(2.0) - log_factorial(k));
    case WeylRegion::CrossPolytope: return std::exp(-log_factorial(2 * k));
    case WeylRegion::Cube: return std::ldexp(1.0, -k);
  }
  return 0.0;
}

WeylIntegral weyl_cell_integral(int k, WeylRegion region, std::uint64_t seed, std::size_t samples, bool parallel) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be positive");
  if (k > 8) throw Error(ErrorKind::BudgetExceeded, "Weyl integrals are budgeted for k <= 8");
  WeylIntegral out;
  out.closed_form = weyl_closed_form(k, region);
  if (k <= 3) {
    out.value = nested(k, region, 1.0, 0.0, 0.0);
  } else {
    const MeanEstimate est = parallel ? weyl_mc_parallel(k, region, seed, samples) : weyl_mc_serial(k, region, seed, samples);
    out.value = est.mean;
    out.std_error = est.std_error;
    out.monte_carlo = true;
  }
  return out;
}

Sl3Constants sl3_constants(double tol) {
  Sl3Constants out;
  out.i_in_closed = 3.0 * std::sqrt(3.0) / 640.0 * (27.0 * std::log(3.0) + 68.0);
  out.i_in_quadrature = hexagon_moment(std::sqrt(3.0) / 2.0, 3.0);
  out.i_out_quadrature = hexagon_moment(1.0, 3.0);
  out.ball_r3 = gk([](double r) { return 2.0 * std::numbers::pi * r * r * r * r; }, 0.0, 1.0);
  const double i_out_closed = std::pow(2.0 / std::sqrt(3.0), 5) * out.i_in_closed;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  if (rel(out.i_in_quadrature, out.i_in_closed) > tol || rel(out.i_out_quadrature, i_out_closed) > tol ||
      rel(out.ball_r3, 2.0 * std::numbers::pi / 5.0) > tol)
    throw Error(ErrorKind::QuadratureDisagreement, "hexagon quadrature disagrees with the closed form");
  out.c_bh = std::pow(2.0 * std::numbers::pi / (5.0 * out.i_in_closed), 0.2) * std::sqrt(3.0) / 2.0;
  out.c_ht = std::sqrt(3.0) / (2.0 * out.c_bh);
  return out;
}

double floer_floor(double sigma, double h_vol_hat) {
  if (sigma < 1.0) throw Error(ErrorKind::SigmaBelowOne, "starshapedness modulus must be at least 1");
  if (h_vol_hat < 0.0) throw Error(ErrorKind::InvalidInput, "volume entropy must be non-negative");
  return h_vol_hat / sigma;
}

double spectrum_value(double v_bar, double h, int n, double delta) {
  const double p = n + 1.0;
  return std::pow(v_bar + std::pow(delta, -p), 1.0 / p) * h;
}

double spectrum_tuner(double v_bar, double h, int n, double c) {
  if (!(v_bar > 0.0 && v_bar < 1.0) || !(h > 0.0) || n < 1)
    throw Error(ErrorKind::InvalidInput, "need v_bar in (0,1), h > 0, n >= 1");
  const double p = n + 1.0;
  // Work with (c/h)^{n+1} − v̄ so the rejection is exact at the endpoint.
  const double gap = std::pow(c / h, p) - v_bar;
  if (!(gap > 0.0) || !std::isfinite(gap))
    throw Error(ErrorKind::TargetBelowRange, "target is not above v_bar^{1/(n+1)}·h");
  return std::pow(gap, -1.0 / p);
}

HvolProduct hvol_products(const std::vector<int>& genera) {
  if (genera.empty()) throw Error(ErrorKind::InvalidInput, "need at least one factor");
  double log_vol = 0.0;
  for (int k : genera) {
    require_genus(k);
    log_vol += std::log(2.0) + 0.5 * std::log(std::numbers::pi * (k - 1.0));
  }
  const double kf = static_cast<double>(genera.size());
  return HvolProduct{std::exp(log_vol / (2.0 * kf)) * std::sqrt(kf), std::exp(log_vol)};
}

}  // namespace entropia
