#pragma once

#include <Eigen/Dense>

#include <vector>

#include "entropia/rng.hpp"

namespace entropia {

using Point2 = Eigen::Vector2d;

/// Convex polygon with counter-clockwise vertices and no repeated or
/// collinear vertices. The origin may lie anywhere, including on a vertex,
/// which the radial representation cannot express.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  /// Convex hull of arbitrary points (Andrew's monotone chain).
  static ConvexPolygon hull(std::vector<Point2> points, double collinear_tol = 0.0);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  double area() const;
  double support(const Point2& u) const;
  /// Signed distance from `p` to the boundary, positive inside.
  double depth(const Point2& p) const;
  bool contains(const Point2& p, double tol = 0.0) const { return depth(p) >= -tol; }
  /// Distance from the origin to the boundary along unit `u`; the origin
  /// must lie in the polygon.
  double ray_exit(const Point2& u) const;
  double diameter() const;

  ConvexPolygon negated() const;
  ConvexPolygon scaled(double c) const;

 private:
  std::vector<Point2> vertices_;
};

/// Minkowski sum by merging edge sequences, O(|a| + |b|).
ConvexPolygon minkowski_sum(const ConvexPolygon& a, const ConvexPolygon& b);

/// Exact polar body; throws OriginNotInterior unless the origin is strictly inside.
ConvexPolygon polar(const ConvexPolygon& p);

/// conv(P ∪ −P).
ConvexPolygon reflection_body(const ConvexPolygon& p);

/// P − P.
ConvexPolygon difference_body(const ConvexPolygon& p);

/// Hull of `pairs` random points and their negatives, radii in [0.5, 1.5].
ConvexPolygon random_symmetric_polygon(Rng& rng, int pairs);
/// Hull of `points` uniform points in the unit disk, translated so a random
/// interior point (a random convex combination of the vertices) is the origin.
ConvexPolygon random_convex_polygon(Rng& rng, int points);
/// Regular m-gon inscribed in the ellipse with semi-axes a, b.
ConvexPolygon ellipse_polygon(double a, double b, int m);

/// Shoelace area of an arbitrary simple closed polygon given in order.
double shoelace_area(const std::vector<Point2>& ring);

}  // namespace entropia
