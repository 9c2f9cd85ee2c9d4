#pragma once

// Finite-horizon growth-rate estimators: norm growth Γ₊ of the differential,
// topological entropy from (T, δ)-separated sets, and volume entropy from
// ball growth, plus the inequality reports that relate them.
//
// Every estimate is the least-squares slope of log(quantity) against time
// over the second half of the horizon; the fit residual is always reported.

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "entropia/dynamical_systems.hpp"

namespace entropia {

struct GrowthEstimate {
  double value = 0.0;
  double horizon = 0.0;
  std::size_t samples = 0;
  double fit_residual = 0.0;
  double delta = 0.0;
  std::vector<double> series;  // log(quantity) at times 1..horizon (per step)
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS deviation from the line
};
/// Least-squares line through (t[i], y[i]) for i in [first, t.size()).
SlopeFit tail_slope(const std::vector<double>& t, const std::vector<double>& y, std::size_t first);

enum class Accumulation { Direct, LogQR };

struct GammaOptions {
  int horizon = 200;
  std::size_t states = 64;
  std::uint64_t seed = 0;
  Accumulation accumulation = Accumulation::LogQR;
  /// Norm |v|_W = |W v| on tangent spaces; empty means the chart norm.
  Eigen::MatrixXd norm_weight;
  bool parallel = true;
};

/// log ‖dφⁿ(p)‖ for n = 1..horizon along the orbit of p. Direct products
/// throw JacobianOverflow beyond 50 steps or on non-finite entries.
std::vector<double> log_norm_series(const DiscreteSystem& sys, const Eigen::VectorXd& p, const GammaOptions& opts);

/// Γ₊(φ) ≈ tail slope of max_p log ‖dφⁿ(p)‖, per unit time. Needs horizon ≥ 8.
GrowthEstimate gamma_plus(const DiscreteSystem& sys, const GammaOptions& opts = {});
/// Γ(φ) = max(Γ₊(φ), Γ₊(φ⁻¹)); Γ₊(φ) alone if φ is not invertible.
GrowthEstimate gamma(const DiscreteSystem& sys, const GammaOptions& opts = {});

struct PropertyCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Conjugacy invariance, restriction monotonicity, decomposition, powers
/// and products on the built-in systems, each at tolerance `tol`.
std::vector<PropertyCheck> gamma_properties_suite(const GammaOptions& opts = {}, double tol = 2e-2);

struct HtopOptions {
  std::size_t candidates = 20000;
  std::uint64_t seed = 0;
  bool parallel = true;
  std::size_t pair_budget = 400'000'000;  // candidate pairs per (n, δ)
};

struct HtopResult {
  GrowthEstimate estimate;                  // max over δ of the slopes
  std::vector<double> deltas;
  std::vector<std::vector<double>> counts;  // counts[δ index][n − 1], monotone envelope
  std::vector<double> slopes;               // per δ
};

/// Greedy maximal (n, δ)-separated subsets of a seeded candidate cloud for
/// n = 1..horizon. Counts are replaced by their monotone envelope (each
/// greedy set is also separated for every larger n and smaller δ), so they
/// are non-increasing in δ and non-decreasing in n. Throws BudgetExceeded
/// if the candidate pair count exceeds the budget.
HtopResult htop_separated(const DiscreteSystem& sys, const std::vector<double>& deltas, int horizon,
                          const HtopOptions& opts = {});

enum class BallGeometryKind { Hyperbolic, Euclidean };

/// Plane of curvature −1 or 0 with metric scaled by c; ball areas in closed form.
struct BallGeometry {
  BallGeometryKind kind = BallGeometryKind::Hyperbolic;
  double scale = 1.0;
  double ball_volume(double radius) const;
};

/// Tail slope of log Vol B(R) on [R_max/2, R_max].
GrowthEstimate hvol_ball_growth(const BallGeometry& geometry, double r_max, int samples = 401);

/// f(R) = log(V(R + b)/V(1)) with b = 2 satisfies f(R + S) ≤ f(R) + f(S);
/// returns the worst violation over an R, S grid (≤ 0 means it holds).
double ball_subadditivity_violation(const BallGeometry& geometry, double r_max, int grid = 60);

/// Smallest R on a scan with (f(R + δ) − f(R)) / e^{(h − ε)R} > threshold
/// for f the hyperbolic ball area; negative if none up to r_max.
double growth_gap_radius(double h, double eps, double delta, double threshold, double r_max);

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool passed = false;
};

/// h_top ≥ h_vol − (residuals + 2e-2); with gamma_plus ≥ 0 also checks
/// h_top ≤ dim · Γ₊ + tolerance.
std::vector<InequalityReport> manning_check(const GrowthEstimate& h_top, const GrowthEstimate& h_vol, int dim = 0,
                                            const GrowthEstimate* gamma_plus_est = nullptr);

struct TimeChangeReport {
  double gamma_changed = 0.0;  // Γ₊(φ_{fX})
  double gamma_base = 0.0;     // Γ₊(φ_X)
  double f_sup = 0.0;
  double htop_changed = 0.0;
  double htop_base = 0.0;
  bool gamma_bound = false;  // Γ₊(φ_{fX}) ≤ sup f · Γ₊(φ_X) + tol
  bool htop_bound = false;   // h_top(φ_{fX}) ≤ sup f · h_top(φ_X) + tol
};

/// Γ₊ and separated-set entropy of a flow and its time change, compared
/// through sup f. htop_horizon ≤ 0 skips the entropy comparison.
TimeChangeReport time_change_bound(const DiscreteSystem& base_flow, const DiscreteSystem& changed_flow, double f_sup,
                                   const GammaOptions& opts, int htop_horizon = 0,
                                   const std::vector<double>& deltas = {}, const HtopOptions& hopts = {},
                                   double tol = 2e-2);

}  // namespace entropia
