#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "entropia/convex_body.hpp"
#include "entropia/error.hpp"
#include "entropia/polygon.hpp"
#include "entropia/rng.hpp"

namespace entropia {
namespace {

constexpr double kPi = std::numbers::pi;

ConvexPolygon square() { return ConvexPolygon::hull({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}); }

// Support function of a point set, independent of the polygon class.
double support_of(const std::vector<Point2>& pts, const Point2& u) {
  double best = -1e300;
  for (const auto& p : pts) best = std::max(best, p.dot(u));
  return best;
}

// Distance from the origin to the boundary along u, for a convex polygon containing the origin.
double ray_hit(const std::vector<Point2>& v, const Point2& u) {
  double best = 1e300;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    Point2 n(b.y() - a.y(), a.x() - b.x());
    if (n.dot(a) < 0.0) n = -n;
    if (n.dot(u) > 0.0) best = std::min(best, n.dot(a) / n.dot(u));
  }
  return best;
}

TEST(Polygon, HullDropsInteriorAndCollinearPoints) {
  const ConvexPolygon p = ConvexPolygon::hull({{0, 0}, {2, 0}, {1, 0}, {2, 2}, {0, 2}, {1, 1}});
  EXPECT_EQ(p.size(), 4u);
  EXPECT_DOUBLE_EQ(p.area(), 4.0);
}

TEST(Polygon, PolarOfSquareIsCrossPolytope) {
  const ConvexPolygon q = polar(square());
  EXPECT_NEAR(q.area(), 2.0, 1e-14);
  for (const auto& v : q.vertices()) EXPECT_NEAR(std::abs(v.x()) + std::abs(v.y()), 1.0, 1e-14);
}

TEST(Polygon, PolarRequiresInteriorOrigin) {
  const ConvexPolygon t = ConvexPolygon::hull({{0, 0}, {1, 0}, {0, 1}});
  try {
    polar(t);
    FAIL() << "expected OriginNotInterior";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OriginNotInterior);
  }
}

TEST(Polygon, MinkowskiSumSupportIsAdditive) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const ConvexPolygon a = random_convex_polygon(rng, 7);
    const ConvexPolygon b = random_convex_polygon(rng, 5);
    const ConvexPolygon s = minkowski_sum(a, b);
    for (int i = 0; i < 16; ++i) {
      const double t = 2 * kPi * i / 16 + 0.1;
      const Point2 u(std::cos(t), std::sin(t));
      EXPECT_NEAR(s.support(u), support_of(a.vertices(), u) + support_of(b.vertices(), u), 1e-12);
    }
  }
}

TEST(Polygon, PolarInvolutionProperty) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const ConvexPolygon p = random_symmetric_polygon(rng, 3 + trial % 6);
    const ConvexPolygon pp = polar(polar(p));
    ASSERT_NEAR(pp.area(), p.area(), 1e-9 * p.area());
    for (int i = 0; i < 8; ++i) {
      const Point2 u(std::cos(i * 0.7), std::sin(i * 0.7));
      ASSERT_NEAR(pp.support(u), p.support(u), 1e-10);
    }
  }
}

TEST(Polygon, ReflectionBodyOfOriginVertexTriangleHasRatioFour) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Point2 a(rng.uniform(0.2, 2.0), rng.uniform(-1.0, 1.0));
    const double t = rng.uniform(0.3, 2.5);
    const Point2 b = rng.uniform(0.2, 2.0) * Point2(std::cos(std::atan2(a.y(), a.x()) + t),
                                                     std::sin(std::atan2(a.y(), a.x()) + t));
    const ConvexPolygon tri = ConvexPolygon::hull({{0, 0}, a, b});
    EXPECT_NEAR(reflection_body(tri).area() / tri.area(), 4.0, 1e-9);
    EXPECT_NEAR(difference_body(tri).area() / tri.area(), 6.0, 1e-9);
  }
}

TEST(Polygon, ReflectionRatioAtMostFour) {
  Rng rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const ConvexPolygon p = random_convex_polygon(rng, 4 + trial % 12);
    ASSERT_LE(reflection_body(p).area() / p.area(), 4.0 + 1e-9);
    ASSERT_LE(difference_body(p).area() / p.area(), 6.0 + 1e-9);
  }
}

TEST(StarBodyTest, DirectionGridIsAntipodallyClosed) {
  for (int dim : {2, 3, 4}) {
    const auto dirs = direction_grid(dim, 200);
    const StarBody k(dirs, std::vector<double>(dirs.size(), 1.0));
    for (std::size_t i = 0; i < k.size(); ++i) {
      const auto j = k.antipode(i);
      ASSERT_TRUE(j.has_value()) << "dim " << dim;
      EXPECT_NEAR((k.directions()[*j] + k.directions()[i]).norm(), 0.0, 1e-12);
    }
  }
}

TEST(StarBodyTest, RadialOfEllipseMatchesClosedForm) {
  Eigen::Matrix2d form;
  form << 1.0 / 4.0, 0.0, 0.0, 1.0;
  const StarBody k = StarBody::from_ellipsoid(Ellipsoid(form));
  for (std::size_t i = 0; i < k.size(); i += 37) {
    const auto& u = k.directions()[i];
    const double expect = 1.0 / std::sqrt(u(0) * u(0) / 4.0 + u(1) * u(1));
    EXPECT_NEAR(k.radial()[i], expect, 1e-12);
  }
}

TEST(StarBodyTest, VolumeMethodsAgree) {
  Eigen::Matrix2d form;
  form << 1.0 / 9.0, 0.0, 0.0, 1.0;
  const StarBody ell = StarBody::from_ellipsoid(Ellipsoid(form), 4000);
  VolumeOptions exact{VolumeMethod::Exact2d};
  VolumeOptions quad{VolumeMethod::RadialQuadrature};
  VolumeOptions mc{VolumeMethod::MonteCarlo, 3, 400000};
  const double truth = 3.0 * kPi;
  EXPECT_NEAR(volume(ell, exact).value, truth, 1e-5 * truth);
  EXPECT_NEAR(volume(ell, quad).value, truth, 1e-5 * truth);
  const VolumeResult m = volume(ell, mc);
  EXPECT_NEAR(m.value, truth, 4.0 * m.std_error);

  const StarBody ball = StarBody::ball(3, 1.0);
  const double b = 4.0 * kPi / 3.0;
  EXPECT_NEAR(volume(ball, quad).value, b, 1e-3 * b);
  const VolumeResult mb = volume(ball, mc);
  EXPECT_NEAR(mb.value, b, 4.0 * mb.std_error);
}

TEST(StarBodyTest, VolumeCrossAgreementProperty) {
  Rng rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const ConvexPolygon p = random_symmetric_polygon(rng, 3 + trial % 5);
    const StarBody k = StarBody::from_polygon(p, 720);
    // Shoelace over ray-cast boundary points along the sample directions.
    std::vector<Point2> ring;
    for (const auto& d : k.directions()) {
      const Point2 u(d(0), d(1));
      ring.push_back(ray_hit(p.vertices(), u) * u);
    }
    double inscribed = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Point2& a = ring[i];
      const Point2& b = ring[(i + 1) % ring.size()];
      inscribed += 0.5 * (a.x() * b.y() - a.y() * b.x());
    }
    const double e = volume(k, VolumeOptions{VolumeMethod::Exact2d}).value;
    const double q = volume(k, VolumeOptions{VolumeMethod::RadialQuadrature}).value;
    ASSERT_NEAR(e, inscribed, 1e-12 * inscribed);
    ASSERT_LE(e, p.area() * (1.0 + 1e-12));
    // Midpoint sum minus triangle fan on a uniform grid.
    const auto& rho = k.radial();
    const double h = 2.0 * kPi / static_cast<double>(rho.size());
    double gap = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
      const double a = rho[i], b = rho[(i + 1) % rho.size()];
      gap += 0.25 * h * (b - a) * (b - a) + 0.5 * a * b * (h - std::sin(h));
    }
    ASSERT_NEAR(q - e, gap, 1e-12 * e);
  }
}

TEST(StarBodyTest, SigmaIsOneOnConvexBodiesProperty) {
  Rng rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    const ConvexPolygon p = trial % 2 ? random_symmetric_polygon(rng, 4) : random_convex_polygon(rng, 9);
    const StarBody k = StarBody::from_polygon(p, 360);
    ASSERT_NEAR(sigma_starshapedness(k).sigma_upper, 1.0, 1e-9);
  }
}

TEST(StarBodyTest, SigmaExceedsOneOnStarShapedNonconvexBody) {
  const StarBody star = StarBody::from_radial(
      2, [](const Eigen::VectorXd& u) { return 1.0 + 0.4 * std::cos(5.0 * std::atan2(u(1), u(0))); });
  EXPECT_FALSE(star.is_convex());
  EXPECT_GT(sigma_starshapedness(star).sigma_upper, 1.2);
}

TEST(StarBodyTest, IrreversibilityOfShiftedDisk) {
  // Unit disk centred at (c, 0): radial(u) = c·u₁ + √(1 − c²u₂²).
  const double c = 0.3;
  const StarBody k = StarBody::from_radial(2, [&](const Eigen::VectorXd& u) {
    return c * u(0) + std::sqrt(1.0 - c * c * u(1) * u(1));
  });
  EXPECT_NEAR(irreversibility_ratio(k), (1.0 + c) / (1.0 - c), 1e-9);
  EXPECT_NEAR(irreversibility_ratio(StarBody::ball(2)), 1.0, 1e-15);
}

TEST(StarBodyTest, PolarDualInvolution) {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const StarBody k = StarBody::from_polygon(random_symmetric_polygon(rng, 5), 720);
    const StarBody kk = polar_dual(polar_dual(k));
    // Sampled supports are exact only at the grid, so the double dual drifts near sharp corners.
    for (std::size_t i = 0; i < k.size(); ++i) ASSERT_NEAR(kk.radial()[i], k.radial()[i], 2e-2 * k.radial()[i]);
  }
}

TEST(StarBodyTest, PolarOfEllipseIsPolarEllipse) {
  Eigen::Matrix2d form;
  form << 2.0, 0.5, 0.5, 1.0;
  const Ellipsoid e(form);
  const StarBody dual = polar_dual(StarBody::from_ellipsoid(e, 2000));
  const Ellipsoid pe = e.polar();
  for (std::size_t i = 0; i < dual.size(); i += 50)
    EXPECT_NEAR(dual.radial()[i], pe.radial(dual.directions()[i]), 1e-5);
}

TEST(Loewner, SquareOuterEllipseIsCircleOfRadiusSqrtTwo) {
  const LoewnerFit fit = outer_loewner(StarBody::from_polygon(square()));
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.ellipsoid.form()(0, 0), 0.5, 1e-6);
  EXPECT_NEAR(fit.ellipsoid.form()(1, 1), 0.5, 1e-6);
  EXPECT_NEAR(fit.ellipsoid.form()(0, 1), 0.0, 1e-6);
  EXPECT_NEAR(fit.ellipsoid.volume() / 4.0, kPi / 2.0, 1e-4);
}

TEST(Loewner, RectangleFitIsAxisAligned) {
  const double a = 3.0, b = 0.5;
  std::vector<Eigen::VectorXd> pts;
  for (double sx : {-1.0, 1.0})
    for (double sy : {-1.0, 1.0}) pts.push_back(Eigen::Vector2d(sx * a, sy * b));
  const LoewnerFit fit = minimum_volume_ellipsoid(pts);
  EXPECT_NEAR(fit.ellipsoid.form()(0, 0), 1.0 / (2 * a * a), 1e-6);
  EXPECT_NEAR(fit.ellipsoid.form()(1, 1), 1.0 / (2 * b * b), 1e-5);
}

TEST(Loewner, SquareInnerEllipseIsUnitDisk) {
  const InnerLoewner in = inner_loewner(square());
  EXPECT_NEAR(in.fit.ellipsoid.form()(0, 0), 1.0, 1e-6);
  EXPECT_NEAR(in.fit.ellipsoid.form()(1, 1), 1.0, 1e-6);
  EXPECT_NEAR(in.max_dilation, std::sqrt(2.0), 1e-6);
}

TEST(Loewner, JohnSandwichOnRandomSymmetricPolygons) {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const ConvexPolygon p = random_symmetric_polygon(rng, 3 + trial % 7);
    const InnerLoewner in = inner_loewner(p);
    EXPECT_LE(in.max_inner_excess, 1.0 + 1e-6);
    EXPECT_LE(in.max_dilation, std::sqrt(2.0) + 1e-6);
    const LoewnerFit out = outer_loewner(StarBody::from_polygon(p));
    // The outer ellipse shrunk by √2 lies inside p: its support never exceeds p's.
    for (int i = 0; i < 64; ++i) {
      const Eigen::Vector2d u(std::cos(i * kPi / 32), std::sin(i * kPi / 32));
      EXPECT_LE(out.ellipsoid.support(u) / std::sqrt(2.0), p.support(u) + 1e-6);
    }
  }
}

TEST(Loewner, InnerRejectsAsymmetricBody) {
  const ConvexPolygon t = ConvexPolygon::hull({{-1, -1}, {2, -1}, {-1, 2}});
  EXPECT_THROW(inner_loewner(t), Error);
}

TEST(Santalo, ProductBoundedByDiskValue) {
  Rng rng(4);
  const double bound = kPi * kPi;
  for (int trial = 0; trial < 100; ++trial) {
    const ConvexPolygon p = random_symmetric_polygon(rng, 3 + trial % 9);
    EXPECT_LE(p.area() * polar(p).area(), bound);
  }
  for (double a : {1.0, 2.0, 5.0}) {
    const ConvexPolygon e = ellipse_polygon(a, 1.0, 720);
    EXPECT_NEAR(e.area() * polar(e).area(), bound, 1e-3);
  }
}

}  // namespace
}  // namespace entropia
