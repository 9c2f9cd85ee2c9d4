#include "entropia/convex_body.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "entropia/error.hpp"
#include "entropia/kernels.hpp"
#include "entropia/special.hpp"

namespace entropia {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::size_t i, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (i > 0) {
    result += f * static_cast<double>(i % base);
    i /= base;
    f /= base;
  }
  return result;
}

Point2 as2(const Eigen::VectorXd& v) { return Point2(v[0], v[1]); }

// Typical spacing between neighbouring grid directions.
double grid_mesh(int dim, std::size_t count) {
  const double sphere = dim * unit_ball_volume(dim);
  return std::pow(sphere / static_cast<double>(count), 1.0 / (dim - 1));
}

// Radial function of the convex body with support values h on the grid
// directions, via its polar: ρ(d_i) = 1 / max_j ⟨d_i, d_j⟩ / h_j.
std::vector<double> radial_from_support(const std::vector<Eigen::VectorXd>& dirs, const std::vector<double>& h) {
  std::vector<double> out(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    double best = 0.0;
    for (std::size_t j = 0; j < dirs.size(); ++j) best = std::max(best, dirs[i].dot(dirs[j]) / h[j]);
    out[i] = 1.0 / best;
  }
  return out;
}

double defect_tolerance(const StarBody& k, const GeometryTolerances& tol) {
  if (k.dim() == 2) return tol.hull;
  const double mesh = grid_mesh(k.dim(), k.size());
  return tol.hull + mesh * mesh;
}

void require_convex(const StarBody& k, const GeometryTolerances& tol) {
  if (!k.is_convex(tol)) throw Error(ErrorKind::NotConvex, "body fails the convex-hull test");
}

}  // namespace

std::string to_string(VolumeMethod m) {
  switch (m) {
    case VolumeMethod::Exact2d: return "exact2d";
    case VolumeMethod::RadialQuadrature: return "radial_quadrature";
    case VolumeMethod::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

std::vector<Eigen::VectorXd> direction_grid(int dim, std::size_t count) {
  if (dim < 2) throw Error(ErrorKind::UnsupportedDim, "direction grids need dim >= 2");
  if (count == 0) count = dim == 2 ? kDefaultGrid2d : kDefaultGridNd;
  if (count % 2 != 0) ++count;
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  if (dim == 2) {
    for (std::size_t i = 0; i < count; ++i) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
      out.push_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
    return out;
  }
  const std::size_t half = count / 2;
  if (dim == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < half; ++i) {
      const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * static_cast<double>(i);
      out.push_back(Eigen::Vector3d(r * std::cos(a), r * std::sin(a), z));
    }
  } else {
    if (dim > 8) throw Error(ErrorKind::UnsupportedDim, "direction grids support dim <= 8");
    for (std::size_t i = 1; out.size() < half; ++i) {
      Eigen::VectorXd v(dim);
      for (int c = 0; c < dim; ++c) {
        const double q = radical_inverse(i, kPrimes[c]);
        v[c] = std::numbers::sqrt2 * boost::math::erf_inv(2.0 * q - 1.0);
      }
      const double norm = v.norm();
      if (norm > 1e-12) out.push_back(v / norm);
    }
  }
  for (std::size_t i = 0; i < half; ++i) out.push_back(-out[i]);
  return out;
}

StarBody::StarBody(std::vector<Eigen::VectorXd> directions, std::vector<double> radial) {
  if (directions.empty() || directions.size() != radial.size())
    throw Error(ErrorKind::InvalidInput, "directions and radial values must be non-empty and of equal length");
  dim_ = static_cast<int>(directions.front().size());
  if (dim_ < 2) throw Error(ErrorKind::UnsupportedDim, "star bodies need dim >= 2");
  for (std::size_t i = 0; i < directions.size(); ++i) {
    if (directions[i].size() != dim_) throw Error(ErrorKind::DimensionMismatch, "direction of wrong length");
    if (!(radial[i] > 0.0) || !std::isfinite(radial[i]))
      throw Error(ErrorKind::OriginNotInterior, "radial values must be positive and finite");
    const double n = directions[i].norm();
    if (n <= 0.0) throw Error(ErrorKind::InvalidInput, "zero direction");
    directions[i] /= n;
  }
  if (dim_ == 2) {
    std::vector<double> ang(directions.size());
    for (std::size_t i = 0; i < directions.size(); ++i) {
      double a = std::atan2(directions[i][1], directions[i][0]);
      if (a < 0.0) a += 2.0 * std::numbers::pi;
      ang[i] = a;
    }
    std::vector<std::size_t> order(directions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ang[a] < ang[b]; });
    for (std::size_t i : order) {
      directions_.push_back(directions[i]);
      radial_.push_back(radial[i]);
      angles_.push_back(ang[i]);
    }
    if (directions_.size() < 3) throw Error(ErrorKind::DegenerateBody, "need at least three directions");
    for (std::size_t i = 0; i < angles_.size(); ++i) {
      const double next = i + 1 < angles_.size() ? angles_[i + 1] : angles_[0] + 2.0 * std::numbers::pi;
      if (next - angles_[i] >= std::numbers::pi)
        throw Error(ErrorKind::DegenerateBody, "directions leave a gap of at least pi");
    }
  } else {
    directions_ = std::move(directions);
    radial_ = std::move(radial);
  }
  antipode_.assign(directions_.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    const std::size_t j = nearest_direction(-directions_[i]);
    if ((directions_[j] + directions_[i]).norm() < 1e-9) antipode_[i] = j;
  }
}

StarBody StarBody::from_radial(int dim, const std::function<double(const Eigen::VectorXd&)>& rho, std::size_t count) {
  auto dirs = direction_grid(dim, count);
  std::vector<double> r(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) r[i] = rho(dirs[i]);
  return StarBody(std::move(dirs), std::move(r));
}

StarBody StarBody::from_polygon(const ConvexPolygon& poly, std::size_t count) {
  if (poly.size() < 3 || poly.depth(Point2::Zero()) <= 0.0)
    throw Error(ErrorKind::OriginNotInterior, "polygon must contain the origin in its interior");
  return from_radial(2, [&](const Eigen::VectorXd& u) { return poly.ray_exit(as2(u)); }, count);
}

StarBody StarBody::from_ellipsoid(const Ellipsoid& e, std::size_t count) {
  return from_radial(e.dim(), [&](const Eigen::VectorXd& u) { return e.radial(u); }, count);
}

StarBody StarBody::ball(int dim, double radius, std::size_t count) {
  return from_radial(dim, [radius](const Eigen::VectorXd&) { return radius; }, count);
}

std::vector<Eigen::VectorXd> StarBody::points() const {
  std::vector<Eigen::VectorXd> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
  return out;
}

double StarBody::support(const Eigen::VectorXd& u) const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) best = std::max(best, radial_[i] * directions_[i].dot(u));
  return best;
}

std::size_t StarBody::nearest_direction(const Eigen::VectorXd& u) const {
  std::size_t best = 0;
  double best_dot = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    const double d = directions_[i].dot(u);
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  return best;
}

double StarBody::radial_at(const Eigen::VectorXd& u) const {
  if (dim_ != 2) return radial_[nearest_direction(u)];
  double a = std::atan2(u[1], u[0]);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  const auto it = std::upper_bound(angles_.begin(), angles_.end(), a);
  const std::size_t hi = (it == angles_.end()) ? 0 : static_cast<std::size_t>(it - angles_.begin());
  const std::size_t lo = (hi == 0) ? angles_.size() - 1 : hi - 1;
  const Point2 p = radial_[lo] * as2(directions_[lo]);
  const Point2 q = radial_[hi] * as2(directions_[hi]);
  const Point2 e = q - p;
  const double denom = u[0] * e.y() - u[1] * e.x();
  const double numer = p.x() * q.y() - p.y() * q.x();
  if (std::abs(denom) < 1e-300) return radial_[lo];
  return numer / denom;
}

bool StarBody::contains(const Eigen::VectorXd& x) const {
  const double n = x.norm();
  if (n == 0.0) return true;
  return n <= radial_at(x / n);
}

std::optional<std::size_t> StarBody::antipode(std::size_t i) const {
  if (antipode_[i] == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return antipode_[i];
}

std::vector<Point2> StarBody::ring() const {
  if (dim_ != 2) throw Error(ErrorKind::UnsupportedDim, "ring() needs dim = 2");
  std::vector<Point2> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(as2(point(i)));
  return out;
}

ConvexPolygon StarBody::hull_polygon() const { return ConvexPolygon::hull(ring()); }

double StarBody::diameter() const {
  double rmax = 0.0;
  for (double r : radial_) rmax = std::max(rmax, r);
  if (dim_ == 2) return hull_polygon().diameter();
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (const auto j = antipode(i)) d = std::max(d, radial_[i] + radial_[*j]);
  }
  return std::max(d, rmax);
}

StarBody StarBody::scaled(double c) const {
  std::vector<double> r = radial_;
  for (double& x : r) x *= c;
  return with_radial(std::move(r));
}

StarBody StarBody::with_radial(std::vector<double> radial) const { return StarBody(directions_, std::move(radial)); }

StarBody convex_hull(const StarBody& k) {
  std::vector<double> r(k.size());
  if (k.dim() == 2) {
    const ConvexPolygon hull = k.hull_polygon();
    for (std::size_t i = 0; i < k.size(); ++i) r[i] = std::max(k.radial()[i], hull.ray_exit(as2(k.directions()[i])));
  } else {
    std::vector<double> h(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) h[i] = k.support(k.directions()[i]);
    r = radial_from_support(k.directions(), h);
    for (std::size_t i = 0; i < k.size(); ++i) r[i] = std::max(r[i], k.radial()[i]);
  }
  return k.with_radial(std::move(r));
}

double StarBody::convexity_defect() const {
  const double diam = diameter();
  double worst = 0.0;
  if (dim_ == 2) {
    const ConvexPolygon hull = hull_polygon();
    for (const auto& p : ring()) worst = std::max(worst, hull.depth(p));
  } else {
    const StarBody c = convex_hull(*this);
    for (std::size_t i = 0; i < size(); ++i) worst = std::max(worst, c.radial()[i] - radial_[i]);
  }
  return worst / diam;
}

bool StarBody::is_convex(const GeometryTolerances& tol) const {
  return convexity_defect() <= defect_tolerance(*this, tol);
}

StarBody polar_dual(const StarBody& k, const GeometryTolerances& tol) {
  require_convex(k, tol);
  std::vector<double> r(k.size());
  if (k.dim() == 2) {
    const ConvexPolygon dual = polar(k.hull_polygon());
    for (std::size_t i = 0; i < k.size(); ++i) r[i] = dual.ray_exit(as2(k.directions()[i]));
  } else {
    for (std::size_t i = 0; i < k.size(); ++i) r[i] = 1.0 / k.support(k.directions()[i]);
  }
  return k.with_radial(std::move(r));
}

StarBody reflection_body(const StarBody& k, const GeometryTolerances& tol) {
  require_convex(k, tol);
  std::vector<double> r(k.size());
  if (k.dim() == 2) {
    const ConvexPolygon refl = reflection_body(k.hull_polygon());
    for (std::size_t i = 0; i < k.size(); ++i) r[i] = refl.ray_exit(as2(k.directions()[i]));
  } else {
    std::vector<double> h(k.size());
    for (std::size_t i = 0; i < k.size(); ++i)
      h[i] = std::max(k.support(k.directions()[i]), k.support(-k.directions()[i]));
    r = radial_from_support(k.directions(), h);
  }
  return k.with_radial(std::move(r));
}

StarBody difference_body(const StarBody& k, const GeometryTolerances& tol) {
  require_convex(k, tol);
  std::vector<double> r(k.size());
  if (k.dim() == 2) {
    const ConvexPolygon diff = difference_body(k.hull_polygon());
    for (std::size_t i = 0; i < k.size(); ++i) r[i] = diff.ray_exit(as2(k.directions()[i]));
  } else {
    std::vector<double> h(k.size());
    for (std::size_t i = 0; i < k.size(); ++i)
      h[i] = k.support(k.directions()[i]) + k.support(-k.directions()[i]);
    r = radial_from_support(k.directions(), h);
  }
  return k.with_radial(std::move(r));
}

LoewnerFit outer_loewner(const StarBody& k, const GeometryTolerances& tol) {
  return minimum_volume_ellipsoid(k.points(), LoewnerOptions{tol.vol, 100000});
}

namespace {

bool is_symmetric(const StarBody& k, const GeometryTolerances& tol) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double r = k.radial()[i];
    const auto j = k.antipode(i);
    const double back = j ? k.radial()[*j] : k.radial_at(-k.directions()[i]);
    if (std::abs(back - r) > std::max(tol.sym, 1e-9) * r) return false;
  }
  return true;
}

}  // namespace

InnerLoewner inner_loewner(const StarBody& k, const GeometryTolerances& tol) {
  require_convex(k, tol);
  if (!is_symmetric(k, tol)) throw Error(ErrorKind::NotConvex, "inner Loewner fit needs a centrally symmetric body");
  std::vector<Eigen::VectorXd> dual_points;
  if (k.dim() == 2) {
    const ConvexPolygon dual = polar(k.hull_polygon());
    for (const auto& v : dual.vertices()) dual_points.push_back(Eigen::Vector2d(v));
  } else {
    for (const auto& d : k.directions()) dual_points.push_back(d / k.support(d));
  }
  const LoewnerFit outer = minimum_volume_ellipsoid(dual_points, LoewnerOptions{tol.vol, 100000});
  InnerLoewner out{LoewnerFit{outer.ellipsoid.polar(), outer.iterations, outer.gap, outer.converged}, 0.0, 0.0};
  const Ellipsoid& e = out.fit.ellipsoid;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double re = e.radial(k.directions()[i]);
    out.max_inner_excess = std::max(out.max_inner_excess, re / k.radial()[i]);
    out.max_dilation = std::max(out.max_dilation, k.radial()[i] / re);
  }
  return out;
}

InnerLoewner inner_loewner(const ConvexPolygon& k, const GeometryTolerances& tol) {
  double scale = 0.0;
  for (const auto& v : k.vertices()) scale = std::max(scale, v.norm());
  for (const auto& v : k.vertices()) {
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& w : k.vertices()) gap = std::min(gap, (v + w).norm());
    if (gap > std::max(tol.sym, 1e-9) * scale)
      throw Error(ErrorKind::NotConvex, "inner Loewner fit needs a centrally symmetric body");
  }
  std::vector<Eigen::VectorXd> dual_points;
  const ConvexPolygon dual = polar(k);
  for (const auto& v : dual.vertices()) dual_points.push_back(Eigen::Vector2d(v));
  const LoewnerFit outer = minimum_volume_ellipsoid(dual_points, LoewnerOptions{tol.vol, 100000});
  InnerLoewner out{LoewnerFit{outer.ellipsoid.polar(), outer.iterations, outer.gap, outer.converged}, 0.0, 0.0};
  const Ellipsoid& e = out.fit.ellipsoid;
  const auto& v = k.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % v.size()];
    Point2 n(b.y() - a.y(), a.x() - b.x());
    n.normalize();
    out.max_inner_excess = std::max(out.max_inner_excess, e.support(Eigen::Vector2d(n)) / n.dot(a));
    out.max_dilation = std::max(out.max_dilation, e.gauge(Eigen::Vector2d(a)));
  }
  return out;
}

VolumeResult volume(const StarBody& k, const VolumeOptions& opts) {
  VolumeResult out;
  out.method = opts.method;
  const int n = k.dim();
  switch (opts.method) {
    case VolumeMethod::Exact2d:
      if (n != 2) throw Error(ErrorKind::UnsupportedDim, "exact2d needs dim = 2");
      out.value = shoelace_area(k.ring());
      break;
    case VolumeMethod::RadialQuadrature:
      if (n == 2) {
        // Midpoint weights on the (sorted) angle grid.
        const auto& d = k.directions();
        const std::size_t m = k.size();
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          auto ang = [&](std::size_t j) { return std::atan2(d[j % m][1], d[j % m][0]); };
          double gap_prev = ang(i) - ang(i + m - 1);
          double gap_next = ang(i + 1) - ang(i);
          if (gap_prev < 0.0) gap_prev += 2.0 * std::numbers::pi;
          if (gap_next < 0.0) gap_next += 2.0 * std::numbers::pi;
          const double r = k.radial()[i];
          sum += 0.5 * (gap_prev + gap_next) * 0.5 * r * r;
        }
        out.value = sum;
      } else {
        double sum = 0.0;
        for (double r : k.radial()) sum += std::pow(r, n) / n;
        out.value = sum * n * unit_ball_volume(n) / static_cast<double>(k.size());
      }
      break;
    case VolumeMethod::MonteCarlo: {
      const double half = *std::max_element(k.radial().begin(), k.radial().end());
      const HitCount hc = opts.parallel ? mc_volume_parallel(k, half, opts.seed, opts.samples)
                                        : mc_volume_serial(k, half, opts.seed, opts.samples);
      const double box = std::pow(2.0 * half, n);
      const double p = static_cast<double>(hc.hits) / static_cast<double>(hc.samples);
      out.value = box * p;
      out.std_error = box * std::sqrt(p * (1.0 - p) / static_cast<double>(hc.samples));
      break;
    }
  }
  return out;
}

double irreversibility_ratio(const StarBody& k) {
  double theta = 1.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const auto j = k.antipode(i);
    const double back = j ? k.radial()[*j] : k.radial_at(-k.directions()[i]);
    theta = std::max(theta, back / k.radial()[i]);
  }
  return theta;
}

Starshapedness sigma_starshapedness(const StarBody& k) {
  StarBody hull = convex_hull(k);
  double sigma = 1.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double ratio = hull.radial()[i] / k.radial()[i];
    if (ratio > sigma) {
      sigma = ratio;
      arg = i;
    }
  }
  return Starshapedness{sigma, std::move(hull), arg};
}

}  // namespace entropia
