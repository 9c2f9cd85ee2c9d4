#include "entropia/ellipsoid.hpp"

#include <cmath>
#include <limits>

#include "entropia/error.hpp"
#include "entropia/special.hpp"

namespace entropia {

Ellipsoid::Ellipsoid(Eigen::MatrixXd form) : form_(0.5 * (form + form.transpose())) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(form_);
  if (eig.eigenvalues().minCoeff() <= 0.0) throw Error(ErrorKind::DegenerateBody, "ellipsoid form is not positive definite");
}

Ellipsoid Ellipsoid::ball(int dim, double radius) {
  return Ellipsoid(Eigen::MatrixXd::Identity(dim, dim) / (radius * radius));
}

double Ellipsoid::volume() const { return unit_ball_volume(dim()) / std::sqrt(form_.determinant()); }

double Ellipsoid::radial(const Eigen::VectorXd& u) const { return 1.0 / std::sqrt(u.dot(form_ * u)); }

double Ellipsoid::support(const Eigen::VectorXd& u) const { return std::sqrt(u.dot(form_.ldlt().solve(u))); }

double Ellipsoid::gauge(const Eigen::VectorXd& x) const { return std::sqrt(x.dot(form_ * x)); }

LoewnerFit minimum_volume_ellipsoid(const std::vector<Eigen::VectorXd>& points, const LoewnerOptions& opts) {
  if (points.empty()) throw Error(ErrorKind::DegenerateBody, "no points to enclose");
  const int n = static_cast<int>(points.front().size());
  const int m = static_cast<int>(points.size());
  Eigen::MatrixXd P(n, m);
  for (int i = 0; i < m; ++i) P.col(i) = points[i];

  Eigen::FullPivLU<Eigen::MatrixXd> lu(P);
  lu.setThreshold(1e-12);
  if (lu.rank() < n) throw Error(ErrorKind::DegenerateBody, "points span a lower-dimensional subspace");

  // Barycentric weights u; M(u) = Σ u_i p_i p_iᵀ; κ_i = p_iᵀ M⁻¹ p_i.
  Eigen::VectorXd u = Eigen::VectorXd::Constant(m, 1.0 / m);
  Eigen::MatrixXd Minv = (P * u.asDiagonal() * P.transpose()).inverse();
  Eigen::VectorXd kappa = (P.transpose() * Minv * P).diagonal();
  // Convergence in log-volume: a gap ε in κ_max/n − 1 bounds the volume
  // excess by roughly (n/2)·ε.
  const double eps = 2.0 * opts.volume_tol / n;

  LoewnerFit fit{Ellipsoid::ball(n), 0, 0.0, false};
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    Eigen::Index jmax = 0;
    const double kmax = kappa.maxCoeff(&jmax);
    double kmin = std::numeric_limits<double>::infinity();
    Eigen::Index jmin = -1;
    for (int i = 0; i < m; ++i) {
      if (u[i] > 0.0 && kappa[i] < kmin) {
        kmin = kappa[i];
        jmin = i;
      }
    }
    const double up = kmax / n - 1.0;
    const double down = 1.0 - kmin / n;
    if (up <= eps && down <= eps) break;

    Eigen::Index j;
    double beta;
    if (up >= down) {
      j = jmax;
      beta = (kmax - n) / (n * (kmax - 1.0));
    } else {
      j = jmin;
      const double floor = -u[j] / (1.0 - u[j]);
      beta = kmin > 1.0 ? (kmin - n) / (n * (kmin - 1.0)) : floor;
      if (beta < floor) beta = floor;
    }
    // M ← (1−β)M + β p pᵀ; update the inverse by Sherman–Morrison.
    const Eigen::VectorXd p = P.col(j);
    const Eigen::VectorXd Mp = Minv * p;
    const double kj = kappa[j];
    const double scale = 1.0 / (1.0 - beta);
    const double coef = beta / (1.0 - beta + beta * kj);
    Minv = scale * (Minv - coef * Mp * Mp.transpose());
    const Eigen::VectorXd w = P.transpose() * Mp;
    kappa = scale * (kappa - coef * w.cwiseProduct(w));
    u *= (1.0 - beta);
    u[j] += beta;
    if (u[j] < 1e-300) u[j] = 0.0;
    if (it % 1000 == 999) {
      Minv = (P * u.asDiagonal() * P.transpose()).inverse();
      kappa = (P.transpose() * Minv * P).diagonal();
    }
  }
  Minv = (P * u.asDiagonal() * P.transpose()).inverse();
  kappa = (P.transpose() * Minv * P).diagonal();
  const double kmax = kappa.maxCoeff();
  fit.iterations = it;
  fit.gap = kmax / n - 1.0;
  fit.converged = it < opts.max_iterations;
  fit.ellipsoid = Ellipsoid(Minv / kmax);
  return fit;
}

}  // namespace entropia
