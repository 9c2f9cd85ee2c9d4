#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "entropia/ellipsoid.hpp"
#include "entropia/polygon.hpp"

namespace entropia {

struct GeometryTolerances {
  double hull = 1e-9;  // relative to diameter
  double sym = 1e-9;
  double fit = 1e-7;
  double vol = 1e-7;
};

inline constexpr std::size_t kDefaultGrid2d = 720;
inline constexpr std::size_t kDefaultGridNd = 4096;

/// Quasi-uniform unit directions, closed under u ↦ −u. In 2-D these are
/// equally spaced angles starting at 0; in 3-D a Fibonacci spiral; above
/// that a Halton sequence pushed through the Gaussian quantile.
std::vector<Eigen::VectorXd> direction_grid(int dim, std::size_t count = 0);

/// Star-shaped body given by its radial function on sampled directions.
class StarBody {
 public:
  StarBody(std::vector<Eigen::VectorXd> directions, std::vector<double> radial);

  /// Samples `rho` on the canonical grid.
  static StarBody from_radial(int dim, const std::function<double(const Eigen::VectorXd&)>& rho, std::size_t count = 0);
  /// Samples a polygon containing the origin in its interior.
  static StarBody from_polygon(const ConvexPolygon& poly, std::size_t count = 0);
  static StarBody from_ellipsoid(const Ellipsoid& e, std::size_t count = 0);
  static StarBody ball(int dim, double radius = 1.0, std::size_t count = 0);

  int dim() const { return dim_; }
  std::size_t size() const { return radial_.size(); }
  const std::vector<Eigen::VectorXd>& directions() const { return directions_; }
  const std::vector<double>& radial() const { return radial_; }
  Eigen::VectorXd point(std::size_t i) const { return radial_[i] * directions_[i]; }
  std::vector<Eigen::VectorXd> points() const;

  /// h_K(u) = max_i ⟨radial_i·d_i, u⟩.
  double support(const Eigen::VectorXd& u) const;
  /// Radial function at an arbitrary unit direction: exact on the sample
  /// polygon in 2-D, nearest sample direction otherwise.
  double radial_at(const Eigen::VectorXd& u) const;
  bool contains(const Eigen::VectorXd& x) const;
  /// Index of −d_i when the grid is antipodally closed.
  std::optional<std::size_t> antipode(std::size_t i) const;

  /// Largest relative distance of a sample from the boundary of the convex
  /// hull of all samples (0 for convex bodies).
  double convexity_defect() const;
  bool is_convex(const GeometryTolerances& tol = {}) const;
  double diameter() const;

  /// Polygon through the samples in angular order (2-D only).
  std::vector<Point2> ring() const;
  /// Convex hull of the samples (2-D only).
  ConvexPolygon hull_polygon() const;

  StarBody scaled(double c) const;
  /// Same grid, radial function replaced.
  StarBody with_radial(std::vector<double> radial) const;

 private:
  std::size_t nearest_direction(const Eigen::VectorXd& u) const;

  int dim_ = 0;
  std::vector<Eigen::VectorXd> directions_;
  std::vector<double> radial_;
  std::vector<double> angles_;  // 2-D only, sorted with directions
  std::vector<std::size_t> antipode_;
};

/// K°, with radial 1/h_K.
StarBody polar_dual(const StarBody& k, const GeometryTolerances& tol = {});
/// conv(K ∪ −K).
StarBody reflection_body(const StarBody& k, const GeometryTolerances& tol = {});
/// K − K via h_K(u) + h_K(−u).
StarBody difference_body(const StarBody& k, const GeometryTolerances& tol = {});
/// Radial function of conv(K) on K's grid.
StarBody convex_hull(const StarBody& k);

/// Outer Loewner ellipsoid of the samples. Centered ellipsoids are symmetric,
/// so enclosing the samples also encloses their reflections.
LoewnerFit outer_loewner(const StarBody& k, const GeometryTolerances& tol = {});

struct InnerLoewner {
  LoewnerFit fit;  // ellipsoid is the inscribed one
  double max_inner_excess = 0.0;  // max radial_E / radial_K, ≤ 1 when E ⊆ K
  double max_dilation = 0.0;      // max radial_K / radial_E, ≤ √n by John
};

/// Maximum-volume centered inscribed ellipsoid, as the polar of the outer
/// Loewner ellipsoid of K°. Throws NotConvex unless K is convex and
/// centrally symmetric.
InnerLoewner inner_loewner(const StarBody& k, const GeometryTolerances& tol = {});
InnerLoewner inner_loewner(const ConvexPolygon& k, const GeometryTolerances& tol = {});

enum class VolumeMethod { Exact2d, RadialQuadrature, MonteCarlo };

struct VolumeOptions {
  VolumeMethod method = VolumeMethod::RadialQuadrature;
  std::uint64_t seed = 0;
  std::size_t samples = 1'000'000;
  bool parallel = true;
};

struct VolumeResult {
  double value = 0.0;
  double std_error = 0.0;
  VolumeMethod method = VolumeMethod::RadialQuadrature;
};

VolumeResult volume(const StarBody& k, const VolumeOptions& opts = {});

/// max_u radial(−u)/radial(u).
double irreversibility_ratio(const StarBody& k);

struct Starshapedness {
  double sigma_upper = 1.0;
  StarBody witness;
  std::size_t argmax = 0;
};

/// Convex-hull upper bound on the starshapedness modulus.
Starshapedness sigma_starshapedness(const StarBody& k);

std::string to_string(VolumeMethod m);

}  // namespace entropia
