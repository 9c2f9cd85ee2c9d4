#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "entropia/dynamical_systems.hpp"
#include "entropia/entropy_estimators.hpp"
#include "entropia/error.hpp"
#include "entropia/profiles.hpp"
#include "entropia/reeb_collapse.hpp"

namespace entropia {
namespace {

const double kCatExponent = std::log((3.0 + std::sqrt(5.0)) / 2.0);
const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

TEST(Systems, JacobiansAgreeWithFiniteDifferences) {
  const Eigen::Matrix2i a = (Eigen::Matrix2i() << 2, 1, 1, 1).finished();
  const std::vector<DiscreteSystem> systems = {
      circle_rotation(kGolden), torus_rotation(kGolden, 0.3), cat_map(), doubling_map(), shear(0.2),
      suspension_flow(a, {1.0, 0.3}), reeb_solid_torus_map(ProfileFunctions::dim3(0.2)),
      reeb_mapping_torus_map(MappingTorusSpec{}.with_s(0.3))};
  for (const auto& sys : systems) EXPECT_LE(jacobian_consistency(sys, 50, 1), 1e-6) << sys.name;
}

TEST(Systems, InverseUndoesStep) {
  const DiscreteSystem cat = cat_map();
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd p = cat.sample(rng);
    EXPECT_LE(cat.metric(cat.step_inverse(cat.step(p)), p), 1e-12);
  }
  EXPECT_FALSE(doubling_map().invertible());
}

TEST(Systems, TorusDistanceWrapsCoordinates) {
  EXPECT_NEAR(torus_distance(Eigen::Vector2d(0.05, 0.5), Eigen::Vector2d(0.95, 0.5), {1.0, 1.0}), 0.1, 1e-15);
  EXPECT_NEAR(torus_distance(Eigen::Vector2d(0.05, 0.5), Eigen::Vector2d(0.95, 0.5), {0.0, 1.0}), 0.9, 1e-15);
}

TEST(Gamma, CatMapExponent) {
  EXPECT_NEAR(gamma_plus(cat_map()).value, kCatExponent, 1e-3);
  EXPECT_NEAR(gamma(cat_map()).value, kCatExponent, 1e-3);
}

TEST(Gamma, DoublingMapAndRotations) {
  EXPECT_NEAR(gamma_plus(doubling_map()).value, std::log(2.0), 1e-3);
  EXPECT_LE(std::abs(gamma(circle_rotation(kGolden)).value), 1e-3);
  EXPECT_LE(std::abs(gamma(torus_rotation(kGolden, 0.1)).value), 1e-3);
}

TEST(Gamma, DirectAndLogQrAgree) {
  GammaOptions direct;
  direct.horizon = 40;
  direct.accumulation = Accumulation::Direct;
  GammaOptions qr = direct;
  qr.accumulation = Accumulation::LogQR;
  EXPECT_NEAR(gamma_plus(cat_map(), direct).value, gamma_plus(cat_map(), qr).value, 1e-9);
  direct.horizon = 60;
  EXPECT_THROW(gamma_plus(cat_map(), direct), Error);
}

TEST(Gamma, SerialAndParallelAgreeBitwise) {
  GammaOptions a;
  a.parallel = false;
  GammaOptions b;
  b.parallel = true;
  const DiscreteSystem sys = reeb_mapping_torus_map(MappingTorusSpec{}.with_s(0.4));
  const GrowthEstimate x = gamma_plus(sys, a), y = gamma_plus(sys, b);
  EXPECT_EQ(x.value, y.value);
  EXPECT_EQ(x.series, y.series);
}

TEST(Gamma, PropertySuitePasses) {
  for (const auto& check : gamma_properties_suite()) EXPECT_TRUE(check.passed) << check.name << " " << check.lhs
                                                                               << " vs " << check.rhs;
}

TEST(Gamma, ReebFlowsGrowSlowly) {
  // Shear flows: the differential grows linearly, so Γ vanishes as the horizon grows.
  GammaOptions opts;
  opts.horizon = 400;
  const double g = gamma(reeb_solid_torus_map(ProfileFunctions::dim3(0.2)), opts).value;
  EXPECT_GE(g, 0.0);
  EXPECT_LT(g, 0.01);
}

TEST(Htop, CatMapWithinFifteenPercent) {
  const HtopResult r = htop_separated(cat_map(), {0.2, 0.3}, 7);
  EXPECT_NEAR(r.estimate.value, kCatExponent, 0.15 * kCatExponent);
}

TEST(Htop, DoublingMapWithinTenPercent) {
  const HtopResult r = htop_separated(doubling_map(), {0.1, 0.2}, 9);
  EXPECT_NEAR(r.estimate.value, std::log(2.0), 0.1 * std::log(2.0));
}

TEST(Htop, RotationHasZeroEntropy) {
  EXPECT_LE(std::abs(htop_separated(circle_rotation(kGolden), {0.1, 0.2}, 9).estimate.value), 1e-3);
}

TEST(Htop, CountsAreMonotone) {
  const HtopResult r = htop_separated(cat_map(), {0.15, 0.2, 0.3}, 6);
  for (std::size_t d = 0; d < r.deltas.size(); ++d) {
    for (std::size_t n = 1; n < r.counts[d].size(); ++n) EXPECT_GE(r.counts[d][n], r.counts[d][n - 1]);
    if (d > 0)
      for (std::size_t n = 0; n < r.counts[d].size(); ++n) EXPECT_LE(r.counts[d][n], r.counts[d - 1][n]);
  }
}

TEST(Htop, SerialAndParallelAgree) {
  HtopOptions a;
  a.parallel = false;
  a.candidates = 5000;
  HtopOptions b = a;
  b.parallel = true;
  const HtopResult x = htop_separated(cat_map(), {0.2}, 5, a);
  const HtopResult y = htop_separated(cat_map(), {0.2}, 5, b);
  EXPECT_EQ(x.counts, y.counts);
}

TEST(Htop, BudgetIsEnforced) {
  HtopOptions opts;
  opts.pair_budget = 1000;
  EXPECT_THROW(htop_separated(cat_map(), {0.3}, 3, opts), Error);
}

TEST(BallGrowth, HyperbolicAndScaled) {
  EXPECT_NEAR(hvol_ball_growth({BallGeometryKind::Hyperbolic, 1.0}, 200.0).value, 1.0, 1e-3);
  EXPECT_NEAR(hvol_ball_growth({BallGeometryKind::Hyperbolic, 2.0}, 200.0).value, 0.5, 1e-3);
  EXPECT_NEAR(hvol_ball_growth({BallGeometryKind::Euclidean, 1.0}, 5000.0).value, 0.0, 1e-3);
  const BallGeometry flat{BallGeometryKind::Euclidean, 3.0};
  EXPECT_NEAR(flat.ball_volume(2.0), std::numbers::pi * 4.0, 1e-12);
}

TEST(BallGrowth, SubadditivityHolds) {
  EXPECT_LE(ball_subadditivity_violation({BallGeometryKind::Hyperbolic, 1.0}, 30.0), 1e-12);
  EXPECT_LE(ball_subadditivity_violation({BallGeometryKind::Euclidean, 1.0}, 30.0), 1e-12);
}

TEST(BallGrowth, GapRadiusExistsBelowTheGrowthRate) {
  // (|B(r+δ)| - |B(r)|) e^{-(h-ε) r} with |B(r)| = 2π(cosh r - 1) on the hyperbolic plane.
  const auto ratio = [](double r) {
    return 2.0 * std::numbers::pi * (std::cosh(r + 1.0) - std::cosh(r)) / std::exp(0.9 * r);
  };
  const double r = growth_gap_radius(1.0, 0.1, 1.0, 50.0, 100.0);
  ASSERT_GT(r, 0.0);
  EXPECT_GT(ratio(r), 50.0);
  EXPECT_LE(ratio(r - 0.01), 50.0);
  EXPECT_LT(growth_gap_radius(1.0, 0.1, 1.0, 50.0, 1.0), 0.0);
}

TEST(Inequalities, ManningHoldsOnBuiltInSystems) {
  const GrowthEstimate hvol = hvol_ball_growth({BallGeometryKind::Hyperbolic, 1.0}, 200.0);
  GrowthEstimate htop;
  htop.value = 1.0;
  for (const auto& r : manning_check(htop, hvol)) EXPECT_TRUE(r.passed) << r.name;
  const GrowthEstimate g = gamma_plus(cat_map());
  const GrowthEstimate h = htop_separated(cat_map(), {0.2, 0.3}, 7).estimate;
  for (const auto& r : manning_check(h, GrowthEstimate{}, 2, &g)) EXPECT_TRUE(r.passed) << r.name;
}

TEST(Inequalities, TimeChangeBound) {
  const Eigen::Matrix2i a = (Eigen::Matrix2i() << 2, 1, 1, 1).finished();
  const SuspensionSpeed speed{1.0, 0.3};
  GammaOptions opts;
  opts.horizon = 100;
  const TimeChangeReport r =
      time_change_bound(suspension_flow(a, {1.0, 0.0}), suspension_flow(a, speed), speed.sup(), opts);
  EXPECT_TRUE(r.gamma_bound);
  EXPECT_NEAR(r.gamma_base, kCatExponent, 1e-3);
}

}  // namespace
}  // namespace entropia
