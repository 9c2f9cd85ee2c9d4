#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "entropia/error.hpp"
#include "entropia/finsler_volume.hpp"
#include "entropia/polygon.hpp"

namespace entropia {
namespace {

constexpr double kPi = std::numbers::pi;

FinslerField single_fiber(const StarBody& k, FiberConvention conv, std::vector<double> lengths = {1.0, 1.0}) {
  FinslerField f;
  f.base.lengths = std::move(lengths);
  f.base.grid = std::vector<int>(f.base.lengths.size(), 1);
  f.fibers = {k};
  f.convention = conv;
  return f;
}

StarBody ellipse_body(double a, double b) {
  Eigen::Matrix2d form;
  form << 1.0 / (a * a), 0.0, 0.0, 1.0 / (b * b);
  return StarBody::from_ellipsoid(Ellipsoid(form), 4000);
}

TEST(Constants, CnMatchesGammaFunctionFormula) {
  for (int n = 1; n <= 8; ++n) {
    const double omega = std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
    EXPECT_NEAR(c_n(n), 1.0 / std::pow(std::tgamma(n + 1.0) * omega, 1.0 / n), 1e-13);
  }
  EXPECT_NEAR(c_n(2), 1.0 / std::sqrt(2.0 * kPi), 1e-15);
  EXPECT_THROW(c_n(0), Error);
}

TEST(Volumes, EuclideanFieldGivesBaseVolume) {
  const FinslerField f2 = single_fiber(StarBody::ball(2, 1.0, 2000), FiberConvention::Cotangent, {2.0, 3.0});
  EXPECT_NEAR(holmes_thompson_volume(f2), 6.0, 1e-5);
  EXPECT_NEAR(busemann_hausdorff_volume(f2), 6.0, 1e-5);
  const FinslerField f3 = single_fiber(StarBody::ball(3, 1.0), FiberConvention::Tangent, {1.0, 1.0, 1.0});
  EXPECT_NEAR(holmes_thompson_volume(f3), 1.0, 1e-3);
  EXPECT_NEAR(busemann_hausdorff_volume(f3), 1.0, 1e-3);
}

TEST(Volumes, EllipseFibersInBothConventions) {
  const double a = 2.0, b = 0.5;
  // Cotangent fiber E: HT = |E|/π = ab; the tangent fiber is E°, of area π/(ab).
  const FinslerField co = single_fiber(ellipse_body(a, b), FiberConvention::Cotangent);
  EXPECT_NEAR(holmes_thompson_volume(co), a * b, 1e-4);
  EXPECT_NEAR(busemann_hausdorff_volume(co), a * b, 1e-4);
  const FinslerField tan = single_fiber(ellipse_body(a, b), FiberConvention::Tangent);
  EXPECT_NEAR(busemann_hausdorff_volume(tan), 1.0 / (a * b), 1e-4);
  EXPECT_NEAR(holmes_thompson_volume(tan), 1.0 / (a * b), 1e-4);
}

TEST(Volumes, PerCellFibersSumCellContributions) {
  FinslerField f;
  f.base.lengths = {2.0, 1.0};
  f.base.grid = {2, 1};
  f.fibers = {StarBody::ball(2, 1.0, 2000), StarBody::ball(2, 2.0, 2000)};
  // Cells of area 1 with cotangent disks of radius 1 and 2.
  EXPECT_NEAR(holmes_thompson_volume(f), 1.0 + 4.0, 1e-4);
  EXPECT_NEAR(busemann_hausdorff_volume(f), 1.0 + 4.0, 1e-4);
}

TEST(Volumes, HolmesThompsonBelowBusemannHausdorffForSymmetricFibers) {
  Rng rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const StarBody k = StarBody::from_polygon(random_symmetric_polygon(rng, 3 + trial % 5));
    const FinslerField f = single_fiber(k, FiberConvention::Tangent);
    EXPECT_LE(holmes_thompson_volume(f), busemann_hausdorff_volume(f) * (1.0 + 1e-9));
  }
}

// F₁ ≤ F₂ pointwise means D(F₂) ⊆ D(F₁) and D*(F₁) ⊆ D*(F₂); both volumes grow.
TEST(Volumes, MonotoneUnderFiberInclusionProperty) {
  Rng rng(123);
  for (int trial = 0; trial < 1000; ++trial) {
    const ConvexPolygon outer = random_symmetric_polygon(rng, 3 + trial % 4);
    const double shrink = rng.uniform(0.3, 0.99);
    const StarBody big = StarBody::from_polygon(outer, 360);
    const StarBody small = StarBody::from_polygon(outer.scaled(shrink), 360);
    // Tangent unit balls: F_big ≤ F_small.
    const double bh_f1 = busemann_hausdorff_volume(single_fiber(big, FiberConvention::Tangent));
    const double bh_f2 = busemann_hausdorff_volume(single_fiber(small, FiberConvention::Tangent));
    ASSERT_LE(bh_f1, bh_f2);
    const double ht_f1 = holmes_thompson_volume(single_fiber(big, FiberConvention::Tangent));
    const double ht_f2 = holmes_thompson_volume(single_fiber(small, FiberConvention::Tangent));
    ASSERT_LE(ht_f1, ht_f2);
  }
}

TEST(Volumes, ContactVolumeConversionRoundTrips) {
  for (int n = 1; n <= 6; ++n) {
    const double factor = std::tgamma(n + 1.0) * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
    EXPECT_NEAR(contact_volume_from_ht(1.0, n), factor, 1e-12 * factor);
    EXPECT_NEAR(ht_from_contact_volume(contact_volume_from_ht(3.7, n), n), 3.7, 1e-12);
  }
}

TEST(Volumes, NormalizedEntropyIsScaleInvariant) {
  for (int n = 1; n <= 5; ++n) {
    const double c = 1.7;
    EXPECT_NEAR(normalized_entropy(std::pow(c, n) * 2.0, n, 0.8 / c), normalized_entropy(2.0, n, 0.8), 1e-12);
  }
  EXPECT_THROW(normalized_entropy(0.0, 2, 1.0), Error);
}

TEST(FieldValidation, RejectsInconsistentFields) {
  FinslerField f = single_fiber(StarBody::ball(3), FiberConvention::Tangent, {1.0, 1.0});
  EXPECT_THROW(f.validate(), Error);
  FinslerField g = single_fiber(StarBody::ball(2), FiberConvention::Tangent);
  g.base.grid = {2, 2};
  g.fibers = {StarBody::ball(2), StarBody::ball(2)};
  EXPECT_THROW(g.validate(), Error);
  const StarBody shifted = StarBody::from_radial(
      2, [](const Eigen::VectorXd& u) { return 0.3 * u(0) + std::sqrt(1.0 - 0.09 * u(1) * u(1)); });
  FinslerField h = single_fiber(shifted, FiberConvention::Tangent);
  h.reversible = true;
  EXPECT_THROW(h.validate(), Error);
}

TEST(FieldJson, ParsesInlineBodies) {
  const nlohmann::json j = {
      {"base", {{"lengths", {2.0, 2.0}}, {"grid", {1, 1}}}},
      {"fibers", {{{"dim", 2}, {"radial", std::vector<double>(720, 1.0)}}}},
      {"convention", "cotangent"},
      {"reversible", true}};
  const FinslerField f = field_from_json(j);
  EXPECT_EQ(f.dim(), 2);
  EXPECT_TRUE(f.reversible);
  EXPECT_NEAR(holmes_thompson_volume(f), 4.0, 1e-3);
}

}  // namespace
}  // namespace entropia
