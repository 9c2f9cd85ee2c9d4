#pragma once

#include <cstdint>
#include <vector>

#include "entropia/kernels.hpp"

namespace entropia {

/// Volume entropy of a constant-curvature surface of genus k normalized to
/// unit area: 2√(π(k−1)), or √(2π(k−1)) for the non-orientable surface.
double katok_bound(int genus, bool orientable);

/// Lower bound for normalized topological entropy of Finsler geodesic flows
/// on a genus-k surface: 2√(2(k−1)) reversible, √(2(k−1)) general.
double finsler_floor(int genus, bool reversible);

/// c_n·h_vol(Q), doubled for reversible metrics.
double general_floor(int n, double h_vol, bool reversible);

struct VerovicConstants {
  double c_bh = 0.0;
  double c_ht = 0.0;
};

/// Constants for products of k hyperbolic planes, in log-domain.
VerovicConstants verovic_constants(int k);

struct WeylIntegral {
  double value = 0.0;
  double std_error = 0.0;  // 0 for deterministic quadrature
  double closed_form = 0.0;
  bool monte_carlo = false;
};

inline constexpr std::uint64_t kWeylSeed = 0xE2770;
inline constexpr std::size_t kWeylSamples = 10'000'000;

/// ∫ x₁⋯x_k over region ∩ R₊^k: nested Gauss–Kronrod for k ≤ 3,
/// stratified Monte Carlo above. Throws BudgetExceeded for k > 8.
WeylIntegral weyl_cell_integral(int k, WeylRegion region, std::uint64_t seed = kWeylSeed,
                                std::size_t samples = kWeylSamples, bool parallel = true);
double weyl_closed_form(int k, WeylRegion region);

struct Sl3Constants {
  double i_in_closed = 0.0;
  double i_in_quadrature = 0.0;
  double i_out_quadrature = 0.0;
  double ball_r3 = 0.0;  // ∫_B r³ over the unit disk
  double c_bh = 0.0;
  double c_ht = 0.0;
};

/// Hexagon constants for SL(3)/SO(3); throws QuadratureDisagreement when the
/// closed forms and quadrature differ by more than `tol` (relative).
Sl3Constants sl3_constants(double tol = 1e-6);

/// ĥ_vol(F)/σ; throws SigmaBelowOne.
double floer_floor(double sigma, double h_vol_hat);

/// (v̄ + δ^{−(n+1)})^{1/(n+1)}·h.
double spectrum_value(double v_bar, double h, int n, double delta);
/// δ solving spectrum_value(v̄, h, n, δ) = c; throws TargetBelowRange unless
/// c > v̄^{1/(n+1)}·h.
double spectrum_tuner(double v_bar, double h, int n, double c);

struct HvolProduct {
  double h_vol_hat = 0.0;
  double vol = 0.0;
};

/// Product of hyperbolic surfaces of genera k_j: vol = 2^k ∏√(π(k_j−1)),
/// ĥ = vol^{1/(2k)}·√k.
HvolProduct hvol_products(const std::vector<int>& genera);

}  // namespace entropia
