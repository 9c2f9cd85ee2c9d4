#pragma once

// Contact forms on an open book whose page is the annulus [1, 3] × S¹ and
// whose monodromy is a k-fold Dehn twist, together with their Reeb flows.
//
// Mapping-torus chart: (θ, r, x) ∈ [0, 2π) × [1, 3] × [0, 2π), with
// (2π, r, x) glued to (0, r, x + τ(r)). The form is
//   α_s = dθ + s((1 − χ(θ)) λ + χ(θ) ψ*λ),   λ = (2 − r) dx,
// i.e. α_s = dθ + s χ(θ)(2 − r)τ'(r) dr + s(2 − r) dx.
//
// Solid-torus chart near each binding circle: (ϑ, r, x) with r ∈ [0, r_max]
// and form g(r) dϑ + κ f(r) dx (see ProfileFunctions).
//
// Both charts are oriented so that α ∧ dα = density · dθ ∧ dx ∧ dr.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "json.hpp"

#include "entropia/dual.hpp"
#include "entropia/profiles.hpp"
#include "entropia/smooth.hpp"

namespace entropia {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct MappingTorusSpec {
  int twists = 1;
  double r_inner = 1.0;
  double r_outer = 3.0;
  double twist_lo = 1.25;  // τ' is supported in [twist_lo, twist_hi]
  double twist_hi = 2.75;
  double chi_lo = std::numbers::pi / 4.0;  // χ' is supported in [chi_lo, chi_hi]
  double chi_hi = 7.0 * std::numbers::pi / 4.0;
  double s = 0.05;

  MappingTorusSpec with_s(double value) const {
    MappingTorusSpec copy = *this;
    copy.s = value;
    return copy;
  }

  /// τ(r) = 2πk · smoothstep7 across the twist window.
  template <class T> T tau(const T& r) const {
    return (kTwoPi * twists) * smoothstep7((r - twist_lo) / (twist_hi - twist_lo));
  }
  template <class T> T tau_d(const T& r) const {
    return (kTwoPi * twists / (twist_hi - twist_lo)) * smoothstep7_d((r - twist_lo) / (twist_hi - twist_lo));
  }
  /// χ(θ) = smoothstep7 across the cutoff window, for θ ∈ [0, 2π].
  template <class T> T chi(const T& theta) const { return smoothstep7((theta - chi_lo) / (chi_hi - chi_lo)); }
  template <class T> T chi_d(const T& theta) const {
    return smoothstep7_d((theta - chi_lo) / (chi_hi - chi_lo)) / (chi_hi - chi_lo);
  }
  /// χ extended to ℝ by χ(θ + 2π) = χ(θ) + 1.
  template <class T> T chi_lifted(const T& theta) const {
    const double turns = std::floor(value_of(theta) / kTwoPi);
    return turns + chi(theta - kTwoPi * turns);
  }

  /// Coefficient of the closed form ψ*λ − λ = (2 − r)τ'(r) dr.
  template <class T> T lambda_psi(const T& r) const { return (2.0 - r) * tau_d(r); }

  /// m(θ, r) = χ'(θ)(2 − r)²τ'(r); α_s ∧ dα_s = s(1 − s·m) dθ ∧ dx ∧ dr.
  double twist_density(double theta, double r) const {
    return chi_d(theta) * (2.0 - r) * lambda_psi(r);
  }

  /// Throws InvalidInput unless the windows are nested inside the chart.
  void validate() const;
};

MappingTorusSpec mapping_torus_from_json(const nlohmann::json& j);
nlohmann::json mapping_torus_to_json(const MappingTorusSpec& spec);

/// Coefficients (a_θ, a_r, a_x) of α_s at (θ, r, x), on any scalar type.
template <class T>
std::array<T, 3> mapping_torus_alpha(const MappingTorusSpec& spec, const T& theta, const T& r, const T& /*x*/) {
  const double turns = std::floor(value_of(theta) / kTwoPi);
  const T th = theta - kTwoPi * turns;
  return {T(1.0), spec.s * spec.chi(th) * spec.lambda_psi(r), spec.s * (2.0 - r)};
}

/// Coefficient of α ∧ dα against dθ ∧ dx ∧ dr, −a·curl(a) in (θ, r, x)
/// coordinates, from a coefficient vector and its Jacobian
/// da[i][j] = ∂_j a_i.
double contact_density(const Eigen::Vector3d& a, const Eigen::Matrix3d& da);

/// dα as an antisymmetric matrix: dα(u, v) = uᵀ M v.
Eigen::Matrix3d exterior_derivative(const Eigen::Matrix3d& da);

/// α_s and its first derivatives at a point, by forward differentiation.
struct FormJet {
  Eigen::Vector3d a;
  Eigen::Matrix3d da;
};
FormJet mapping_torus_form(const MappingTorusSpec& spec, const Eigen::Vector3d& p);
FormJet solid_torus_form(const ProfileFunctions& prof, const Eigen::Vector3d& p);

/// s(1 − s·m(θ, r)).
double mapping_torus_density(const MappingTorusSpec& spec, double theta, double r);
/// κ h(r).
double solid_torus_density(const ProfileFunctions& prof, double r);

enum class Chart { MappingTorus, SolidTorus };

struct FlowState {
  Chart chart = Chart::MappingTorus;
  Eigen::Vector3d coords = Eigen::Vector3d::Zero();  // (θ, r, x), angles in [0, 2π)
  double time = 0.0;
};

/// (1, 0, Y_x)/(1 − s·m) with Y_x = −χ'(θ)(2 − r)τ'(r).
Eigen::Vector3d mapping_torus_reeb(const MappingTorusSpec& spec, const Eigen::Vector3d& p);

struct ContactThreshold {
  double s0 = 0.0;  // largest s with α_s ∧ dα_s > 0 on the grid
  double s1 = 0.0;  // largest s ≤ s0 with 1/2 ≤ θ̇ ≤ 2 on the grid
  bool capped = false;
  int grid = 0;
};

/// Bisects s on a grid³ sampling of the chart, refining the worst grid point
/// by a local search so the answer does not depend on grid alignment.
/// Throws GridTooCoarse if the bisected s0 fails on the staggered grid.
ContactThreshold contact_threshold(const MappingTorusSpec& spec, int grid = 64, double tol = 1e-4,
                                   double cap = 1e3);

/// Exact flow by inverting the elapsed time along the lifted θ coordinate.
/// Needs s < 1 / max m. Negative t flows backward.
FlowState mapping_torus_flow(const MappingTorusSpec& spec, const Eigen::Vector3d& p, double t);
/// ∂(flow)/∂(θ, r, x) in chart coordinates, including the gluing.
Eigen::Matrix3d mapping_torus_jacobian(const MappingTorusSpec& spec, const Eigen::Vector3d& p, double t);
/// Fixed-step RK4 with the gluing applied whenever θ passes 2π.
FlowState mapping_torus_flow_rk4(const MappingTorusSpec& spec, const Eigen::Vector3d& p, double t,
                                 double step = 1e-3);

struct ReturnResult {
  double time = 0.0;
  Eigen::Vector2d image = Eigen::Vector2d::Zero();  // (r, x)
};

/// First return to {θ = 0} from (0, r, x) by RK4; the last step is shortened
/// to land on the section. Throws NoReturn past 8π and InvalidInput if the
/// return time leaves [π, 4π].
ReturnResult return_map_and_time(const MappingTorusSpec& spec, const Eigen::Vector2d& start, double step = 1e-3);
/// T_s = 2π − s(2 − r)²τ'(r), image (r, x − (2 − r)τ'(r) + τ(r)).
ReturnResult return_map_closed_form(const MappingTorusSpec& spec, const Eigen::Vector2d& start);

/// (θ̇, ṙ, ẋ) = (−f'/h, 0, g'/(κh)); the core limit at r = 0.
Eigen::Vector3d solid_torus_reeb(const ProfileFunctions& prof, const Eigen::Vector3d& p);
FlowState solid_torus_flow(const ProfileFunctions& prof, const Eigen::Vector3d& p, double t);
Eigen::Matrix3d solid_torus_jacobian(const ProfileFunctions& prof, const Eigen::Vector3d& p, double t);
FlowState solid_torus_flow_rk4(const ProfileFunctions& prof, const Eigen::Vector3d& p, double t,
                               double step = 1e-3);

/// ∫ α_s ∧ dα_s over the mapping torus by nested Gauss–Kronrod.
double mapping_torus_volume(const MappingTorusSpec& spec);
/// κ(2π)² ∫₀^{r_max} h dr for one binding component.
double solid_torus_volume(const ProfileFunctions& prof);

struct CollapseRow {
  double s = 0.0;
  double vol_mt = 0.0;
  double vol_st = 0.0;  // all binding components
  double vol_total = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
};

struct CollapseTable {
  std::vector<CollapseRow> rows;
  double slope = 0.0;      // a in vol ≈ a s + b s²
  double curvature = 0.0;  // b
  double predicted_slope = 0.0;
  double residual = 0.0;  // max |vol − fit| / max vol
  double slope_error = 0.0;  // |a − predicted| / predicted
};

/// Volumes of the dim3 open book for each s, two binding components, plus
/// sampled return-time extremes and a least-squares fit vol(s) = a s + b s².
/// Throws FitPoor if the fit residual exceeds 1%, InfeasibleParameters if
/// some s is not in (0, s1].
CollapseTable collapse_volumes(const MappingTorusSpec& spec, const std::vector<double>& s_list,
                               int return_samples = 32, double s1 = 0.0);

/// Volume bound for the higher-family open book in dimension 3: two binding
/// circles of total σ_ε-length ε, profiles of radius r_ε.
struct VolumeBoundCheck {
  double vol_mt = 0.0;
  double vol_st = 0.0;
  double total = 0.0;
  double bound = 0.0;          // 4π s ∫dλ + 12π ε
  double literal_bound = 0.0;  // 2 s ∫dλ + 12π ε
  bool holds = false;
};
VolumeBoundCheck volume_bound_check(const MappingTorusSpec& spec, double r_eps, double eps);

struct Normalized {
  double scale = 1.0;  // c = vol^{−1/(n+1)}
  double value = 0.0;  // value · vol^{1/(n+1)}
};
/// Rescales α to unit volume; Γ and h scale by 1/c. Throws NonPositiveVolume.
Normalized normalize_form(double vol, int n, double gamma_or_h);

}  // namespace entropia
