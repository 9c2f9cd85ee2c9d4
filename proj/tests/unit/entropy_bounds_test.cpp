#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "entropia/entropy_bounds.hpp"
#include "entropia/error.hpp"
#include "entropia/finsler_volume.hpp"
#include "entropia/rng.hpp"

namespace entropia {
namespace {

constexpr double kPi = std::numbers::pi;

long double factorial(int n) {
  long double f = 1.0L;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

TEST(SurfaceBounds, GenusTwoValues) {
  EXPECT_NEAR(katok_bound(2, true), 2.0 * std::sqrt(kPi), 1e-12);
  EXPECT_NEAR(finsler_floor(2, false), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(finsler_floor(2, true), 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_THROW(katok_bound(1, true), Error);
}

TEST(SurfaceBounds, FinslerFloorIsCTwoTimesKatok) {
  for (int k = 2; k <= 40; ++k) {
    EXPECT_NEAR(finsler_floor(k, false), c_n(2) * katok_bound(k, true), 1e-12 * k);
    EXPECT_NEAR(finsler_floor(k, true), 2.0 * c_n(2) * katok_bound(k, true), 1e-12 * k);
  }
}

TEST(SurfaceBounds, GeneralFloorDoublesWhenReversible) {
  EXPECT_NEAR(general_floor(3, 2.0, false), 2.0 * c_n(3), 1e-15);
  EXPECT_NEAR(general_floor(3, 2.0, true), 4.0 * c_n(3), 1e-15);
}

TEST(Verovic, MatchesFactorialFormula) {
  for (int k = 1; k <= 12; ++k) {
    const VerovicConstants v = verovic_constants(k);
    const long double bh = std::pow(factorial(2 * k) / factorial(k), 1.0L / (2 * k)) / std::sqrt(2.0L * k);
    const long double ht = std::pow(factorial(k), 1.0L / (2 * k)) / std::sqrt(static_cast<long double>(k));
    EXPECT_NEAR(v.c_bh, static_cast<double>(bh), 1e-13);
    EXPECT_NEAR(v.c_ht, static_cast<double>(ht), 1e-13);
  }
}

TEST(Verovic, ReportedValuesAndMonotoneLimits) {
  EXPECT_NEAR(verovic_constants(2).c_bh, 0.931, 5e-4);
  EXPECT_NEAR(verovic_constants(3).c_bh, 0.907, 5e-4);
  EXPECT_NEAR(verovic_constants(2).c_ht, 0.841, 5e-4);
  EXPECT_NEAR(verovic_constants(3).c_ht, 0.778, 5e-4);
  const double bh_lim = std::sqrt(2.0 / std::numbers::e);
  const double ht_lim = std::sqrt(1.0 / std::numbers::e);
  for (int k = 2; k <= 60; ++k) {
    const VerovicConstants a = verovic_constants(k - 1), b = verovic_constants(k);
    EXPECT_LT(b.c_bh, a.c_bh);
    EXPECT_LT(b.c_ht, a.c_ht);
    EXPECT_GT(b.c_bh, bh_lim);
    EXPECT_GT(b.c_ht, ht_lim);
  }
  EXPECT_NEAR(verovic_constants(100000).c_bh, bh_lim, 1e-4);
  EXPECT_NEAR(verovic_constants(100000).c_ht, ht_lim, 1e-4);
}

TEST(Weyl, QuadratureMatchesClosedForms) {
  for (int k = 1; k <= 3; ++k) {
    EXPECT_NEAR(weyl_cell_integral(k, WeylRegion::Ball).value, 1.0 / (std::pow(2.0, k) * std::tgamma(k + 1.0)), 1e-8);
    EXPECT_NEAR(weyl_cell_integral(k, WeylRegion::CrossPolytope).value, 1.0 / std::tgamma(2.0 * k + 1.0), 1e-8);
    EXPECT_NEAR(weyl_cell_integral(k, WeylRegion::Cube).value, std::pow(0.5, k), 1e-8);
  }
}

TEST(Weyl, MonteCarloWithinThreeSigma) {
  for (int k = 4; k <= 5; ++k) {
    for (WeylRegion r : {WeylRegion::Ball, WeylRegion::CrossPolytope, WeylRegion::Cube}) {
      const WeylIntegral w = weyl_cell_integral(k, r, kWeylSeed, 2'000'000);
      EXPECT_TRUE(w.monte_carlo);
      EXPECT_LE(std::abs(w.value - w.closed_form), std::max(3.0 * w.std_error, 1e-8));
    }
  }
  EXPECT_THROW(weyl_cell_integral(9, WeylRegion::Cube), Error);
}

TEST(Weyl, SerialAndParallelAgreeBitwise) {
  const WeylIntegral a = weyl_cell_integral(4, WeylRegion::Ball, 7, 300000, false);
  const WeylIntegral b = weyl_cell_integral(4, WeylRegion::Ball, 7, 300000, true);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Sl3, HexagonQuadratureAndConstants) {
  const Sl3Constants c = sl3_constants();
  const double closed = 3.0 * std::sqrt(3.0) / 640.0 * (27.0 * std::log(3.0) + 68.0);
  EXPECT_NEAR(c.i_in_closed, closed, 1e-15);
  EXPECT_NEAR(c.i_in_quadrature / closed, 1.0, 1e-6);
  EXPECT_NEAR(c.ball_r3, 2.0 * kPi / 5.0, 1e-12);
  EXPECT_NEAR(c.c_bh, 0.9496, 1e-3);
  EXPECT_NEAR(c.c_ht, 0.9120, 1e-3);
}

TEST(Floer, FloorAndSigmaGuard) {
  EXPECT_DOUBLE_EQ(floer_floor(2.0, 3.0), 1.5);
  EXPECT_THROW(floer_floor(0.5, 1.0), Error);
}

TEST(Spectrum, RoundTripProperty) {
  Rng rng(2718);
  for (int trial = 0; trial < 1000; ++trial) {
    const double v_bar = rng.uniform(0.01, 0.99);
    const double h = rng.uniform(0.1, 5.0);
    const int n = 1 + static_cast<int>(rng.uniform() * 6);
    const double floor = std::pow(v_bar, 1.0 / (n + 1)) * h;
    const double c = floor * rng.uniform(1.001, 5.0);
    const double delta = spectrum_tuner(v_bar, h, n, c);
    ASSERT_LE(std::abs(spectrum_value(v_bar, h, n, delta) - c) / c, 1e-12);
  }
}

TEST(Spectrum, RejectsExactlyAtAndBelowTheFloor) {
  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const double v_bar = rng.uniform(0.01, 0.99);
    const double h = rng.uniform(0.1, 5.0);
    const int n = 1 + static_cast<int>(rng.uniform() * 6);
    const double floor = std::pow(v_bar, 1.0 / (n + 1)) * h;
    const double c = floor * rng.uniform(0.2, 1.0);
    const double gap = std::pow(c / h, n + 1.0) - v_bar;
    if (gap > 0.0) {
      EXPECT_NO_THROW(spectrum_tuner(v_bar, h, n, c));
    } else {
      EXPECT_THROW(spectrum_tuner(v_bar, h, n, c), Error);
    }
  }
  // (c/h)^(n+1) = v_bar exactly in binary.
  EXPECT_THROW(spectrum_tuner(0.125, 1.0, 2, 0.5), Error);
}

TEST(HvolProducts, SingleSurfaceMatchesKatokNormalization) {
  const HvolProduct p = hvol_products({2});
  EXPECT_NEAR(p.vol, 2.0 * std::sqrt(kPi), 1e-12);
  const HvolProduct q = hvol_products({2, 3});
  EXPECT_NEAR(q.vol, 4.0 * std::sqrt(kPi) * std::sqrt(2.0 * kPi), 1e-12);
  EXPECT_NEAR(q.h_vol_hat, std::pow(q.vol, 0.25) * std::sqrt(2.0), 1e-12);
}

}  // namespace
}  // namespace entropia
