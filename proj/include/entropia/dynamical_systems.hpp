#pragma once

// Maps and time-one maps of flows, packaged with their differential, an
// inverse where one exists, a chart-aware distance and a sampler. The
// estimators in entropy_estimators only ever see this interface.

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "entropia/rng.hpp"

namespace entropia {

class ProfileFunctions;
struct MappingTorusSpec;

enum class SystemKind { Map, Flow };

struct DiscreteSystem {
  using State = Eigen::VectorXd;
  using StepFn = std::function<State(const State&)>;
  using JacobianFn = std::function<Eigen::MatrixXd(const State&)>;

  std::string name;
  SystemKind kind = SystemKind::Map;
  int dim = 0;
  double dt = 1.0;  // flow time per step; 1 for maps
  StepFn step;
  JacobianFn jacobian;
  StepFn step_inverse;          // empty if not invertible
  JacobianFn jacobian_inverse;  // empty: (dφ(φ⁻¹p))⁻¹
  std::function<double(const State&, const State&)> metric;
  std::function<State(Rng&)> sample;
  std::vector<double> period;  // per coordinate, 0 if not periodic
  std::vector<double> lower;   // lower end of each coordinate's range
  bool analytic_jacobian = true;

  bool invertible() const { return static_cast<bool>(step_inverse); }
  Eigen::MatrixXd inverse_jacobian_at(const State& p) const;
};

/// Euclidean distance with the given coordinates taken modulo their period.
double torus_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q, const std::vector<double>& period);

/// Central differences with step h, differences of periodic coordinates
/// reduced to the nearest representative.
Eigen::MatrixXd numeric_jacobian(const DiscreteSystem& sys, const Eigen::VectorXd& p, double h = 1e-6);

/// Replaces the Jacobian by central differences.
DiscreteSystem with_numeric_jacobian(DiscreteSystem sys, double h = 1e-6);

/// Largest relative discrepancy between the Jacobian and central differences
/// over `states` sampled states.
double jacobian_consistency(const DiscreteSystem& sys, int states = 100, std::uint64_t seed = 0);

// Built-in systems. Tori use coordinates in [0, 1).
DiscreteSystem circle_rotation(double alpha);
DiscreteSystem torus_rotation(double alpha, double beta);
/// Linear automorphism of T² given by an integer matrix with det ±1.
DiscreteSystem cat_map(const Eigen::Matrix2i& a = (Eigen::Matrix2i() << 2, 1, 1, 1).finished());
/// x ↦ 2x mod 1 (not invertible).
DiscreteSystem doubling_map();
/// (x, y) ↦ (x, y + a sin 2πx), a diffeomorphism of T².
DiscreteSystem shear(double a);

/// ψ⁻¹ ∘ φ ∘ ψ.
DiscreteSystem conjugate(const DiscreteSystem& phi, const DiscreteSystem& psi);
DiscreteSystem product(const DiscreteSystem& a, const DiscreteSystem& b);
/// φ^m; m < 0 uses the inverse.
DiscreteSystem power(const DiscreteSystem& phi, int m);
DiscreteSystem inverse(const DiscreteSystem& phi);
/// Disjoint union of two systems of equal dimension; the first coordinate
/// of a state is the label 0 or 1.
DiscreteSystem disjoint_union(const DiscreteSystem& a, const DiscreteSystem& b);
/// The same map with states drawn from an invariant subset.
DiscreteSystem restricted(const DiscreteSystem& phi, std::function<Eigen::VectorXd(Rng&)> sampler,
                          const std::string& label);

/// Speed function for suspension flows: c + a sin 2πx on the base.
struct SuspensionSpeed {
  double constant = 1.0;
  double amplitude = 0.0;
  double sup() const;
  double inf() const;
};

/// Time-one map of the flow u̇ = f(x, y) on the mapping torus of a linear
/// torus automorphism, state (x, y, u) with (x, y, 1) ~ (A(x, y), 0).
DiscreteSystem suspension_flow(const Eigen::Matrix2i& a, const SuspensionSpeed& speed);

/// Time-`t` maps of the Reeb flows of reeb_collapse.
DiscreteSystem reeb_solid_torus_map(const ProfileFunctions& prof, double t = 1.0, double r_min = 0.05);
DiscreteSystem reeb_mapping_torus_map(const MappingTorusSpec& spec, double t = 1.0);

}  // namespace entropia
