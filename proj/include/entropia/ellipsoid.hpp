#pragma once

#include <Eigen/Dense>

#include <vector>

namespace entropia {

/// Centered ellipsoid {x : xᵀ A x ≤ 1}.
class Ellipsoid {
 public:
  explicit Ellipsoid(Eigen::MatrixXd form);

  static Ellipsoid ball(int dim, double radius = 1.0);

  int dim() const { return static_cast<int>(form_.rows()); }
  const Eigen::MatrixXd& form() const { return form_; }

  double volume() const;
  /// Boundary distance along a unit direction.
  double radial(const Eigen::VectorXd& u) const;
  double support(const Eigen::VectorXd& u) const;
  double gauge(const Eigen::VectorXd& x) const;
  Ellipsoid polar() const { return Ellipsoid(form_.inverse()); }
  Ellipsoid scaled(double c) const { return Ellipsoid(form_ / (c * c)); }

 private:
  Eigen::MatrixXd form_;
};

struct LoewnerOptions {
  double volume_tol = 1e-7;
  int max_iterations = 100000;
};

struct LoewnerFit {
  Ellipsoid ellipsoid;
  int iterations = 0;
  /// max_i κ_i / n − 1 at termination, an upper bound on the duality gap.
  double gap = 0.0;
  bool converged = false;
};

/// Minimum-volume centered ellipsoid containing the points (Khachiyan
/// iteration with Todd–Yildirim away steps). The result is rescaled so every
/// point satisfies xᵀAx ≤ 1 exactly, with at least one equality.
LoewnerFit minimum_volume_ellipsoid(const std::vector<Eigen::VectorXd>& points, const LoewnerOptions& opts = {});

}  // namespace entropia
