#include "entropia/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "entropia/error.hpp"

namespace entropia {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double cross(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Outward unit normal and offset of edge i -> i+1.
std::pair<Point2, double> edge_plane(const std::vector<Point2>& v, std::size_t i) {
  const Point2& a = v[i];
  const Point2& b = v[(i + 1) % v.size()];
  Point2 n(b.y() - a.y(), a.x() - b.x());
  n.normalize();
  return {n, n.dot(a)};
}

std::size_t lowest_vertex(const std::vector<Point2>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i].y() < v[best].y() || (v[i].y() == v[best].y() && v[i].x() < v[best].x())) best = i;
  }
  return best;
}

}  // namespace

ConvexPolygon ConvexPolygon::hull(std::vector<Point2> points, double collinear_tol) {
  std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  ConvexPolygon out;
  if (points.size() < 3) {
    out.vertices_ = points;
    return out;
  }
  std::vector<Point2> h(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= collinear_tol) --k;
    h[k++] = p;
  }
  for (std::size_t i = points.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], points[i]) <= collinear_tol) --k;
    h[k++] = points[i];
  }
  h.resize(k - 1);
  out.vertices_ = std::move(h);
  return out;
}

double shoelace_area(const std::vector<Point2>& ring) {
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) twice += cross(ring[i], ring[(i + 1) % ring.size()]);
  return 0.5 * twice;
}

double ConvexPolygon::area() const { return shoelace_area(vertices_); }

double ConvexPolygon::support(const Point2& u) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) best = std::max(best, v.dot(u));
  return best;
}

double ConvexPolygon::depth(const Point2& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const auto [n, c] = edge_plane(vertices_, i);
    best = std::min(best, c - n.dot(p));
  }
  return best;
}

double ConvexPolygon::ray_exit(const Point2& u) const {
  double t = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const auto [n, c] = edge_plane(vertices_, i);
    const double along = n.dot(u);
    if (along > 0.0) t = std::min(t, std::max(c, 0.0) / along);
  }
  return t;
}

double ConvexPolygon::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) d = std::max(d, (vertices_[i] - vertices_[j]).norm());
  return d;
}

ConvexPolygon ConvexPolygon::negated() const {
  ConvexPolygon out;
  out.vertices_.reserve(vertices_.size());
  for (const auto& v : vertices_) out.vertices_.push_back(-v);
  return out;
}

ConvexPolygon ConvexPolygon::scaled(double c) const {
  ConvexPolygon out;
  out.vertices_.reserve(vertices_.size());
  for (const auto& v : vertices_) out.vertices_.push_back(c * v);
  return out;
}

ConvexPolygon minkowski_sum(const ConvexPolygon& a, const ConvexPolygon& b) {
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  if (va.size() < 3 || vb.size() < 3) {
    std::vector<Point2> pts;
    for (const auto& p : va)
      for (const auto& q : vb) pts.push_back(p + q);
    return ConvexPolygon::hull(std::move(pts));
  }
  const std::size_t na = va.size();
  const std::size_t nb = vb.size();
  const std::size_t ia = lowest_vertex(va);
  const std::size_t ib = lowest_vertex(vb);
  std::vector<Point2> out;
  out.reserve(na + nb);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < na || j < nb) {
    out.push_back(va[(ia + i) % na] + vb[(ib + j) % nb]);
    const Point2 ea = va[(ia + i + 1) % na] - va[(ia + i) % na];
    const Point2 eb = vb[(ib + j + 1) % nb] - vb[(ib + j) % nb];
    const double turn = cross(ea, eb);
    if (j == nb || (i < na && turn > 0.0)) {
      ++i;
    } else if (i == na || turn < 0.0) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return ConvexPolygon::hull(std::move(out));
}

ConvexPolygon polar(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  if (v.size() < 3) throw Error(ErrorKind::DegenerateBody, "polygon has fewer than three vertices");
  std::vector<Point2> dual;
  dual.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto [n, c] = edge_plane(v, i);
    if (c <= 0.0) throw Error(ErrorKind::OriginNotInterior, "origin is not strictly inside the polygon");
    dual.push_back(n / c);
  }
  return ConvexPolygon::hull(std::move(dual));
}

ConvexPolygon reflection_body(const ConvexPolygon& p) {
  std::vector<Point2> pts = p.vertices();
  for (const auto& v : p.vertices()) pts.push_back(-v);
  return ConvexPolygon::hull(std::move(pts));
}

ConvexPolygon difference_body(const ConvexPolygon& p) { return minkowski_sum(p, p.negated()); }

ConvexPolygon random_symmetric_polygon(Rng& rng, int pairs) {
  if (pairs < 2) throw Error(ErrorKind::InvalidInput, "need at least two point pairs");
  std::vector<Point2> pts;
  for (int i = 0; i < pairs; ++i) {
    const double t = rng.uniform(0.0, std::numbers::pi);
    const double r = rng.uniform(0.5, 1.5);
    const Point2 p(r * std::cos(t), r * std::sin(t));
    pts.push_back(p);
    pts.push_back(-p);
  }
  return ConvexPolygon::hull(std::move(pts), 1e-12);
}

ConvexPolygon random_convex_polygon(Rng& rng, int points) {
  if (points < 3) throw Error(ErrorKind::InvalidInput, "need at least three points");
  while (true) {
    std::vector<Point2> pts;
    for (int i = 0; i < points; ++i) {
      const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double r = std::sqrt(rng.uniform());
      pts.emplace_back(r * std::cos(t), r * std::sin(t));
    }
    const ConvexPolygon hull = ConvexPolygon::hull(std::move(pts), 1e-12);
    if (hull.size() < 3 || hull.area() < 1e-3) continue;
    Point2 c = Point2::Zero();
    double total = 0.0;
    for (const auto& v : hull.vertices()) {
      const double w = rng.uniform() + 1e-3;
      c += w * v;
      total += w;
    }
    c /= total;
    std::vector<Point2> shifted;
    for (const auto& v : hull.vertices()) shifted.push_back(v - c);
    return ConvexPolygon::hull(std::move(shifted), 1e-12);
  }
}

ConvexPolygon ellipse_polygon(double a, double b, int m) {
  if (!(a > 0.0 && b > 0.0) || m < 3) throw Error(ErrorKind::InvalidInput, "need positive semi-axes and m ≥ 3");
  std::vector<Point2> pts;
  for (int i = 0; i < m; ++i) {
    const double t = 2.0 * std::numbers::pi * i / m;
    pts.emplace_back(a * std::cos(t), b * std::sin(t));
  }
  return ConvexPolygon::hull(std::move(pts));
}

}  // namespace entropia
