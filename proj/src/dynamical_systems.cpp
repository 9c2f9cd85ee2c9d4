#include "entropia/dynamical_systems.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "entropia/dual.hpp"
#include "entropia/error.hpp"
#include "entropia/profiles.hpp"
#include "entropia/reeb_collapse.hpp"

namespace entropia {

namespace {

using State = Eigen::VectorXd;

std::vector<double> concat(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

State unit_torus_sample(Rng& rng, int dim) {
  State p(dim);
  for (int i = 0; i < dim; ++i) p(i) = rng.uniform();
  return p;
}

DiscreteSystem unit_torus_system(std::string name, int dim) {
  DiscreteSystem sys;
  sys.name = std::move(name);
  sys.dim = dim;
  sys.period.assign(static_cast<std::size_t>(dim), 1.0);
  sys.lower.assign(static_cast<std::size_t>(dim), 0.0);
  sys.metric = [period = sys.period](const State& p, const State& q) { return torus_distance(p, q, period); };
  sys.sample = [dim](Rng& rng) { return unit_torus_sample(rng, dim); };
  return sys;
}

template <class T>
std::array<T, 2> linear_torus(const Eigen::Matrix2i& a, const T& x, const T& y) {
  return {wrap(a(0, 0) * x + a(0, 1) * y, 1.0), wrap(a(1, 0) * x + a(1, 1) * y, 1.0)};
}

Eigen::Matrix2i integer_inverse(const Eigen::Matrix2i& a) {
  const int det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (det != 1 && det != -1) throw Error(ErrorKind::InvalidInput, "torus automorphism needs det ±1");
  Eigen::Matrix2i inv;
  inv << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
  return inv * det;
}

// Flow of u̇ = f(x) for time t on the suspension of A, on any scalar type.
template <class T>
std::array<T, 3> suspension_flow_step(const Eigen::Matrix2i& a, const Eigen::Matrix2i& a_inv,
                                      const SuspensionSpeed& speed, std::array<T, 3> p, double t) {
  using std::sin;
  T x = p[0], y = p[1], u = p[2];
  T rem = T(std::abs(t));
  for (int guard = 0; guard < 100000; ++guard) {
    const T f = speed.constant + speed.amplitude * sin(2.0 * std::numbers::pi * x);
    if (t >= 0.0) {
      const T to_top = (1.0 - u) / f;
      if (rem < to_top) {
        u = u + f * rem;
        break;
      }
      rem = rem - to_top;
      const auto next = linear_torus(a, x, y);
      x = next[0];
      y = next[1];
      u = T(0.0);
    } else {
      const T to_bottom = u / f;
      if (rem < to_bottom) {
        u = u - f * rem;
        break;
      }
      rem = rem - to_bottom;
      const auto next = linear_torus(a_inv, x, y);
      x = next[0];
      y = next[1];
      u = T(1.0);
    }
  }
  return {x, y, u};
}

}  // namespace

Eigen::MatrixXd DiscreteSystem::inverse_jacobian_at(const State& p) const {
  if (jacobian_inverse) return jacobian_inverse(p);
  if (!step_inverse) throw Error(ErrorKind::InvalidInput, name + " is not invertible");
  return jacobian(step_inverse(p)).inverse();
}

double torus_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q, const std::vector<double>& period) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    double d = std::abs(p(i) - q(i));
    const double per = static_cast<std::size_t>(i) < period.size() ? period[static_cast<std::size_t>(i)] : 0.0;
    if (per > 0.0) {
      d = std::fmod(d, per);
      d = std::min(d, per - d);
    }
    sum += d * d;
  }
  return std::sqrt(sum);
}

Eigen::MatrixXd numeric_jacobian(const DiscreteSystem& sys, const Eigen::VectorXd& p, double h) {
  Eigen::MatrixXd jac(sys.dim, sys.dim);
  for (int j = 0; j < sys.dim; ++j) {
    State lo = p, hi = p;
    lo(j) -= h;
    hi(j) += h;
    State d = sys.step(hi) - sys.step(lo);
    for (int i = 0; i < sys.dim; ++i) {
      const double per = static_cast<std::size_t>(i) < sys.period.size() ? sys.period[static_cast<std::size_t>(i)] : 0.0;
      if (per > 0.0) d(i) -= per * std::round(d(i) / per);
    }
    jac.col(j) = d / (2.0 * h);
  }
  return jac;
}

DiscreteSystem with_numeric_jacobian(DiscreteSystem sys, double h) {
  const DiscreteSystem copy = sys;
  sys.jacobian = [copy, h](const State& p) { return numeric_jacobian(copy, p, h); };
  sys.jacobian_inverse = nullptr;
  sys.analytic_jacobian = false;
  return sys;
}

double jacobian_consistency(const DiscreteSystem& sys, int states, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < states; ++k) {
    const State p = sys.sample(rng);
    const Eigen::MatrixXd exact = sys.jacobian(p);
    const Eigen::MatrixXd approx = numeric_jacobian(sys, p);
    worst = std::max(worst, (exact - approx).norm() / std::max(1.0, approx.norm()));
  }
  return worst;
}

DiscreteSystem circle_rotation(double alpha) {
  DiscreteSystem sys = unit_torus_system("rotation", 1);
  sys.step = [alpha](const State& p) { return State::Constant(1, wrap(p(0) + alpha, 1.0)); };
  sys.step_inverse = [alpha](const State& p) { return State::Constant(1, wrap(p(0) - alpha, 1.0)); };
  sys.jacobian = [](const State&) { return Eigen::MatrixXd::Identity(1, 1); };
  sys.jacobian_inverse = sys.jacobian;
  return sys;
}

DiscreteSystem torus_rotation(double alpha, double beta) {
  DiscreteSystem sys = unit_torus_system("torus-rotation", 2);
  sys.step = [alpha, beta](const State& p) {
    return State((Eigen::Vector2d() << wrap(p(0) + alpha, 1.0), wrap(p(1) + beta, 1.0)).finished());
  };
  sys.step_inverse = [alpha, beta](const State& p) {
    return State((Eigen::Vector2d() << wrap(p(0) - alpha, 1.0), wrap(p(1) - beta, 1.0)).finished());
  };
  sys.jacobian = [](const State&) { return Eigen::MatrixXd::Identity(2, 2); };
  sys.jacobian_inverse = sys.jacobian;
  return sys;
}

DiscreteSystem cat_map(const Eigen::Matrix2i& a) {
  const Eigen::Matrix2i a_inv = integer_inverse(a);
  DiscreteSystem sys = unit_torus_system("cat", 2);
  sys.step = [a](const State& p) {
    const auto q = linear_torus(a, p(0), p(1));
    return State((Eigen::Vector2d() << q[0], q[1]).finished());
  };
  sys.step_inverse = [a_inv](const State& p) {
    const auto q = linear_torus(a_inv, p(0), p(1));
    return State((Eigen::Vector2d() << q[0], q[1]).finished());
  };
  const Eigen::MatrixXd m = a.cast<double>();
  const Eigen::MatrixXd m_inv = a_inv.cast<double>();
  sys.jacobian = [m](const State&) { return m; };
  sys.jacobian_inverse = [m_inv](const State&) { return m_inv; };
  return sys;
}

DiscreteSystem doubling_map() {
  DiscreteSystem sys = unit_torus_system("doubling", 1);
  sys.step = [](const State& p) { return State::Constant(1, wrap(2.0 * p(0), 1.0)); };
  sys.jacobian = [](const State&) { return Eigen::MatrixXd::Constant(1, 1, 2.0); };
  return sys;
}

DiscreteSystem shear(double a) {
  constexpr double kTau = 2.0 * std::numbers::pi;
  DiscreteSystem sys = unit_torus_system("shear", 2);
  sys.step = [a](const State& p) {
    return State((Eigen::Vector2d() << p(0), wrap(p(1) + a * std::sin(kTau * p(0)), 1.0)).finished());
  };
  sys.step_inverse = [a](const State& p) {
    return State((Eigen::Vector2d() << p(0), wrap(p(1) - a * std::sin(kTau * p(0)), 1.0)).finished());
  };
  sys.jacobian = [a](const State& p) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Identity(2, 2);
    j(1, 0) = kTau * a * std::cos(kTau * p(0));
    return j;
  };
  sys.jacobian_inverse = [a](const State& p) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Identity(2, 2);
    j(1, 0) = -kTau * a * std::cos(kTau * p(0));
    return j;
  };
  return sys;
}

DiscreteSystem conjugate(const DiscreteSystem& phi, const DiscreteSystem& psi) {
  if (phi.dim != psi.dim || !psi.invertible()) {
    throw Error(ErrorKind::InvalidInput, "conjugation needs an invertible map of the same dimension");
  }
  DiscreteSystem sys = phi;
  sys.name = "conj(" + phi.name + "," + psi.name + ")";
  sys.step = [phi, psi](const State& p) { return psi.step_inverse(phi.step(psi.step(p))); };
  sys.jacobian = [phi, psi](const State& p) {
    const State q = psi.step(p);
    const State r = phi.step(q);
    return Eigen::MatrixXd(psi.inverse_jacobian_at(r) * phi.jacobian(q) * psi.jacobian(p));
  };
  if (phi.invertible()) {
    sys.step_inverse = [phi, psi](const State& p) { return psi.step_inverse(phi.step_inverse(psi.step(p))); };
    sys.jacobian_inverse = [phi, psi](const State& p) {
      const State q = psi.step(p);
      const State r = phi.step_inverse(q);
      return Eigen::MatrixXd(psi.inverse_jacobian_at(r) * phi.inverse_jacobian_at(q) * psi.jacobian(p));
    };
  } else {
    sys.step_inverse = nullptr;
    sys.jacobian_inverse = nullptr;
  }
  sys.analytic_jacobian = phi.analytic_jacobian && psi.analytic_jacobian;
  return sys;
}

DiscreteSystem product(const DiscreteSystem& a, const DiscreteSystem& b) {
  DiscreteSystem sys;
  sys.name = a.name + "x" + b.name;
  sys.kind = a.kind;
  sys.dt = a.dt;
  sys.dim = a.dim + b.dim;
  const int da = a.dim, db = b.dim;
  auto split = [da, db](const State& p) { return std::make_pair(State(p.head(da)), State(p.tail(db))); };
  auto join = [](const State& x, const State& y) {
    State out(x.size() + y.size());
    out << x, y;
    return out;
  };
  auto block = [da, db](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(da + db, da + db);
    out.topLeftCorner(da, da) = x;
    out.bottomRightCorner(db, db) = y;
    return out;
  };
  sys.step = [a, b, split, join](const State& p) {
    const auto [x, y] = split(p);
    return join(a.step(x), b.step(y));
  };
  sys.jacobian = [a, b, split, block](const State& p) {
    const auto [x, y] = split(p);
    return block(a.jacobian(x), b.jacobian(y));
  };
  if (a.invertible() && b.invertible()) {
    sys.step_inverse = [a, b, split, join](const State& p) {
      const auto [x, y] = split(p);
      return join(a.step_inverse(x), b.step_inverse(y));
    };
    sys.jacobian_inverse = [a, b, split, block](const State& p) {
      const auto [x, y] = split(p);
      return block(a.inverse_jacobian_at(x), b.inverse_jacobian_at(y));
    };
  }
  sys.metric = [a, b, split](const State& p, const State& q) {
    const auto [px, py] = split(p);
    const auto [qx, qy] = split(q);
    return std::hypot(a.metric(px, qx), b.metric(py, qy));
  };
  sys.sample = [a, b, join](Rng& rng) {
    const State x = a.sample(rng);
    return join(x, b.sample(rng));
  };
  sys.period = concat(a.period, b.period);
  sys.lower = concat(a.lower, b.lower);
  sys.analytic_jacobian = a.analytic_jacobian && b.analytic_jacobian;
  return sys;
}

DiscreteSystem inverse(const DiscreteSystem& phi) {
  if (!phi.invertible()) throw Error(ErrorKind::InvalidInput, phi.name + " is not invertible");
  DiscreteSystem sys = phi;
  sys.name = phi.name + "^-1";
  sys.step = phi.step_inverse;
  sys.step_inverse = phi.step;
  sys.jacobian = [phi](const State& p) { return phi.inverse_jacobian_at(p); };
  sys.jacobian_inverse = phi.jacobian;
  return sys;
}

DiscreteSystem power(const DiscreteSystem& phi, int m) {
  if (m < 0) return power(inverse(phi), -m);
  DiscreteSystem sys = phi;
  sys.name = phi.name + "^" + std::to_string(m);
  sys.step = [phi, m](const State& p) {
    State q = p;
    for (int i = 0; i < m; ++i) q = phi.step(q);
    return q;
  };
  sys.jacobian = [phi, m](const State& p) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Identity(phi.dim, phi.dim);
    State q = p;
    for (int i = 0; i < m; ++i) {
      j = phi.jacobian(q) * j;
      q = phi.step(q);
    }
    return j;
  };
  if (phi.invertible()) {
    const DiscreteSystem inv = inverse(phi);
    sys.step_inverse = [inv, m](const State& p) {
      State q = p;
      for (int i = 0; i < m; ++i) q = inv.step(q);
      return q;
    };
    sys.jacobian_inverse = [inv, m](const State& p) {
      Eigen::MatrixXd j = Eigen::MatrixXd::Identity(inv.dim, inv.dim);
      State q = p;
      for (int i = 0; i < m; ++i) {
        j = inv.jacobian(q) * j;
        q = inv.step(q);
      }
      return j;
    };
  }
  return sys;
}

DiscreteSystem disjoint_union(const DiscreteSystem& a, const DiscreteSystem& b) {
  if (a.dim != b.dim) throw Error(ErrorKind::DimensionMismatch, "disjoint union needs equal dimensions");
  DiscreteSystem sys;
  sys.name = a.name + "+" + b.name;
  sys.kind = a.kind;
  sys.dt = a.dt;
  sys.dim = a.dim + 1;
  const int d = a.dim;
  auto piece = [a, b](const State& p) -> const DiscreteSystem& { return p(0) < 0.5 ? a : b; };
  auto tagged = [d](double label, const State& x) {
    State out(d + 1);
    out(0) = label;
    out.tail(d) = x;
    return out;
  };
  auto lift = [d](const Eigen::MatrixXd& j) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(d + 1, d + 1);
    out.bottomRightCorner(d, d) = j;
    return out;
  };
  sys.step = [piece, tagged, d](const State& p) { return tagged(p(0), piece(p).step(p.tail(d))); };
  sys.jacobian = [piece, lift, d](const State& p) { return lift(piece(p).jacobian(p.tail(d))); };
  if (a.invertible() && b.invertible()) {
    sys.step_inverse = [piece, tagged, d](const State& p) { return tagged(p(0), piece(p).step_inverse(p.tail(d))); };
    sys.jacobian_inverse = [piece, lift, d](const State& p) { return lift(piece(p).inverse_jacobian_at(p.tail(d))); };
  }
  sys.metric = [piece, d](const State& p, const State& q) {
    if ((p(0) < 0.5) != (q(0) < 0.5)) return 1e3;
    return piece(p).metric(p.tail(d), q.tail(d));
  };
  sys.sample = [a, b, tagged](Rng& rng) {
    const bool first = rng.uniform() < 0.5;
    return first ? tagged(0.0, a.sample(rng)) : tagged(1.0, b.sample(rng));
  };
  sys.period = concat({0.0}, a.period);
  sys.lower = concat({0.0}, a.lower);
  sys.analytic_jacobian = a.analytic_jacobian && b.analytic_jacobian;
  return sys;
}

DiscreteSystem restricted(const DiscreteSystem& phi, std::function<Eigen::VectorXd(Rng&)> sampler,
                          const std::string& label) {
  DiscreteSystem sys = phi;
  sys.name = phi.name + "|" + label;
  sys.sample = std::move(sampler);
  return sys;
}

double SuspensionSpeed::sup() const { return constant + std::abs(amplitude); }
double SuspensionSpeed::inf() const { return constant - std::abs(amplitude); }

DiscreteSystem suspension_flow(const Eigen::Matrix2i& a, const SuspensionSpeed& speed) {
  if (!(speed.inf() > 0.0)) throw Error(ErrorKind::InvalidInput, "suspension speed must stay positive");
  const Eigen::Matrix2i a_inv = integer_inverse(a);
  DiscreteSystem sys;
  sys.name = "suspension";
  sys.kind = SystemKind::Flow;
  sys.dim = 3;
  sys.dt = 1.0;
  sys.period = {1.0, 1.0, 0.0};
  sys.lower = {0.0, 0.0, 0.0};
  auto make_step = [a, a_inv, speed](double t) {
    return [a, a_inv, speed, t](const State& p) {
      const auto q = suspension_flow_step<double>(a, a_inv, speed, {p(0), p(1), p(2)}, t);
      return State((Eigen::Vector3d() << q[0], q[1], q[2]).finished());
    };
  };
  auto make_jacobian = [a, a_inv, speed](double t) {
    return [a, a_inv, speed, t](const State& p) {
      using D = Dual<3>;
      const auto q = suspension_flow_step<D>(a, a_inv, speed,
                                             {D::variable(p(0), 0), D::variable(p(1), 1), D::variable(p(2), 2)}, t);
      Eigen::MatrixXd j(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) j(i, k) = q[static_cast<std::size_t>(i)].d[static_cast<std::size_t>(k)];
      return j;
    };
  };
  sys.step = make_step(1.0);
  sys.step_inverse = make_step(-1.0);
  sys.jacobian = make_jacobian(1.0);
  sys.jacobian_inverse = make_jacobian(-1.0);
  const Eigen::Matrix2d m = a.cast<double>();
  sys.metric = [m](const State& p, const State& q) {
    auto base = [](const Eigen::Vector2d& x, const Eigen::Vector2d& y, double du) {
      double sum = du * du;
      for (int i = 0; i < 2; ++i) {
        const double d = std::abs(x(i) - y(i));
        const double w = std::fmod(d, 1.0);
        const double c = std::min(w, 1.0 - w);
        sum += c * c;
      }
      return std::sqrt(sum);
    };
    const Eigen::Vector2d px = p.head(2), qx = q.head(2);
    double d = base(px, qx, p(2) - q(2));
    // Across the gluing (x, 1) ~ (Ax, 0).
    d = std::min(d, base(m * px, qx, p(2) - 1.0 - q(2)));
    d = std::min(d, base(px, m * qx, p(2) - (q(2) - 1.0)));
    return d;
  };
  sys.sample = [](Rng& rng) { return unit_torus_sample(rng, 3); };
  return sys;
}

DiscreteSystem reeb_solid_torus_map(const ProfileFunctions& prof, double t, double r_min) {
  DiscreteSystem sys;
  sys.name = "reeb-solid-torus";
  sys.kind = SystemKind::Flow;
  sys.dim = 3;
  sys.dt = t;
  sys.period = {kTwoPi, 0.0, kTwoPi};
  sys.lower = {0.0, 0.0, 0.0};
  sys.step = [prof, t](const State& p) { return State(solid_torus_flow(prof, p, t).coords); };
  sys.step_inverse = [prof, t](const State& p) { return State(solid_torus_flow(prof, p, -t).coords); };
  sys.jacobian = [prof, t](const State& p) { return Eigen::MatrixXd(solid_torus_jacobian(prof, p, t)); };
  sys.jacobian_inverse = [prof, t](const State& p) { return Eigen::MatrixXd(solid_torus_jacobian(prof, p, -t)); };
  sys.metric = [period = sys.period](const State& p, const State& q) { return torus_distance(p, q, period); };
  const double r_max = prof.r_max();
  sys.sample = [r_min, r_max](Rng& rng) {
    State p(3);
    p(0) = rng.uniform(0.0, kTwoPi);
    p(1) = rng.uniform(r_min, r_max);
    p(2) = rng.uniform(0.0, kTwoPi);
    return p;
  };
  return sys;
}

DiscreteSystem reeb_mapping_torus_map(const MappingTorusSpec& spec, double t) {
  DiscreteSystem sys;
  sys.name = "reeb-mapping-torus";
  sys.kind = SystemKind::Flow;
  sys.dim = 3;
  sys.dt = t;
  sys.period = {kTwoPi, 0.0, kTwoPi};
  sys.lower = {0.0, spec.r_inner, 0.0};
  sys.step = [spec, t](const State& p) { return State(mapping_torus_flow(spec, p, t).coords); };
  sys.step_inverse = [spec, t](const State& p) { return State(mapping_torus_flow(spec, p, -t).coords); };
  sys.jacobian = [spec, t](const State& p) { return Eigen::MatrixXd(mapping_torus_jacobian(spec, p, t)); };
  sys.jacobian_inverse = [spec, t](const State& p) { return Eigen::MatrixXd(mapping_torus_jacobian(spec, p, -t)); };
  sys.metric = [period = sys.period](const State& p, const State& q) { return torus_distance(p, q, period); };
  sys.sample = [spec](Rng& rng) {
    State p(3);
    p(0) = rng.uniform(0.0, kTwoPi);
    p(1) = rng.uniform(spec.r_inner, spec.r_outer);
    p(2) = rng.uniform(0.0, kTwoPi);
    return p;
  };
  return sys;
}

}  // namespace entropia
