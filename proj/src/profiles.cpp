#include "entropia/profiles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "entropia/dual.hpp"
#include "entropia/error.hpp"
#include "entropia/smooth.hpp"

namespace entropia {

namespace {

// 8-point Gauss–Legendre nodes/weights on [−1, 1]; exact to degree 15.
constexpr std::array<double, 8> kGlNodes = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                            0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeights = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                              0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};

template <class F> double gauss_legendre(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < kGlNodes.size(); ++i) sum += kGlWeights[i] * f(mid + half * kGlNodes[i]);
  return half * sum;
}

// Higher-family splice points in u = r / r_ε.
constexpr double kRiseA0 = 0.01, kRiseA1 = 0.03, kFallA0 = 0.47, kFallA1 = 0.49;
constexpr double kRiseB0 = 0.45, kRiseB1 = 0.55;
constexpr double kGRise0 = 0.01, kGRise1 = 0.5;

// Dim3 blend windows.
constexpr double kF3Lo = 0.2, kF3Hi = 0.8;
constexpr double kG3Lo = 0.1;

template <class T> T bump_a(const T& u) {
  return smoothstep7((u - kRiseA0) / (kRiseA1 - kRiseA0)) * (1.0 - smoothstep7((u - kFallA0) / (kFallA1 - kFallA0)));
}

template <class T> T dim3_f(const T& r) {
  const T r4 = r * r * r * r;
  return 2.0 - r4 + smooth_transition((r - kF3Lo) / (kF3Hi - kF3Lo)) * (r4 - r);
}

template <class T> T dim3_g(const T& r) {
  const T q = 0.5 * r * r;
  return q + (1.0 - q) * smooth_transition((r - kG3Lo) / (1.0 - kG3Lo));
}

}  // namespace

template <class T> T ProfileFunctions::phi(const T& u) const {
  if (u >= b1_) return sigma_ / (u * u);
  const T fall = 1.0 - smoothstep7((u - e0_) / (b1_ - e0_));
  const T bump_b = smoothstep7((u - kRiseB0) / (kRiseB1 - kRiseB0)) * fall;
  T out = c_a_ * bump_a(u) + c_b_ * bump_b;
  if (u > e0_) {
    // Quadratic Taylor polynomial of σ/u² at b₁, so φ is C² there.
    const T d = u - b1_;
    const double b2 = b1_ * b1_;
    const T taylor = sigma_ / b2 - 2.0 * sigma_ / (b2 * b1_) * d + 3.0 * sigma_ / (b2 * b2) * d * d;
    out = out + (1.0 - fall) * taylor;
  }
  return out;
}

double ProfileFunctions::big_f(double u) const {
  if (u >= b1_) return sigma_ / u;
  if (u <= 0.0) return 1.0;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
  const std::size_t k = static_cast<std::size_t>(it - knots_.begin()) - 1;
  return 1.0 - cumulative_[k] - gauss_legendre([this](double x) { return phi(x); }, knots_[k], u);
}

ProfileFunctions ProfileFunctions::dim3(double s) {
  if (!(s > 0.0)) throw Error(ErrorKind::InfeasibleParameters, "s must be positive");
  ProfileFunctions p;
  p.family_ = ProfileFamily::Dim3;
  p.r_max_ = 1.0;
  p.s_ = s;
  return p;
}

ProfileFunctions ProfileFunctions::higher(double r_eps, double s, double eps) {
  if (!(r_eps > 0.0) || r_eps > 1.0) throw Error(ErrorKind::InfeasibleParameters, "r_eps must lie in (0, 1]");
  if (!(s > 0.0) || s >= r_eps / 2.0) throw Error(ErrorKind::InfeasibleParameters, "need 0 < s < r_eps/2");
  if (!(eps > 0.0)) throw Error(ErrorKind::InfeasibleParameters, "eps must be positive");
  ProfileFunctions p;
  p.family_ = ProfileFamily::Higher;
  p.r_max_ = r_eps;
  p.s_ = s;
  p.eps_ = eps;
  const double sig = s / r_eps;
  p.sigma_ = sig;
  p.b1_ = std::max(0.95, 1.0 - 0.5 * (1.0 - 2.0 * sig));
  p.e0_ = std::max(0.56, p.b1_ - std::min(0.1, 0.5 * (p.b1_ - 2.0 * sig)));
  p.knots_ = {0.0, kRiseA0, kRiseA1, kRiseB0, kFallA0, kFallA1, 0.5, kRiseB1, p.e0_, p.b1_};
  std::sort(p.knots_.begin(), p.knots_.end());

  // Unit-coefficient integrals of each ingredient; the ingredients are
  // polynomial on every knot interval.
  auto integrate = [&](auto&& fn, double a, double b) {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < p.knots_.size(); ++k) {
      const double lo = std::max(a, p.knots_[k]);
      const double hi = std::min(b, p.knots_[k + 1]);
      if (hi > lo) total += gauss_legendre(fn, lo, hi);
    }
    return total;
  };
  auto a_fn = [](double u) { return bump_a(u); };
  auto b_fn = [&](double u) {
    return smoothstep7((u - kRiseB0) / (kRiseB1 - kRiseB0)) * (1.0 - smoothstep7((u - p.e0_) / (p.b1_ - p.e0_)));
  };
  p.c_a_ = 0.0;
  p.c_b_ = 0.0;
  auto e_fn = [&](double u) { return u >= p.b1_ ? 0.0 : p.phi(u); };  // taylor part only while c = 0
  const double ia = integrate(a_fn, 0.0, 0.5);
  const double ib_half = integrate(b_fn, 0.0, 0.5);
  const double ib = integrate(b_fn, 0.0, p.b1_);
  const double ie = integrate(e_fn, 0.0, p.b1_);
  // c_a·ia + c_b·ib_half = 1/2 and c_a·ia + c_b·ib + ie = 1 − σ/b₁.
  p.c_b_ = (0.5 - sig / p.b1_ - ie) / (ib - ib_half);
  p.c_a_ = (0.5 - p.c_b_ * ib_half) / ia;
  if (!(p.c_b_ > 0.0) || !(p.c_a_ > 0.0))
    throw Error(ErrorKind::InfeasibleParameters, "no admissible profile for these parameters");

  p.cumulative_.assign(p.knots_.size(), 0.0);
  for (std::size_t k = 0; k + 1 < p.knots_.size(); ++k)
    p.cumulative_[k + 1] =
        p.cumulative_[k] + gauss_legendre([&p](double x) { return p.phi(x); }, p.knots_[k], p.knots_[k + 1]);
  return p;
}

double ProfileFunctions::kappa() const {
  return family_ == ProfileFamily::Dim3 ? s_ : eps_ / (2.0 * std::numbers::pi);
}

ProfileSample ProfileFunctions::eval(double r) const {
  r = std::clamp(r, 0.0, r_max_);
  ProfileSample out;
  if (family_ == ProfileFamily::Dim3) {
    const Jet x = Jet::variable(r);
    const Jet f = dim3_f(x);
    const Jet g = dim3_g(x);
    out = {f.v, f.d, f.dd, g.v, g.d, g.dd};
    return out;
  }
  const double re = r_max_;
  const double u = r / re;
  const Jet ph = phi(Jet::variable(u));
  out.f = big_f(u);
  out.fp = -ph.v / re;
  out.fpp = -ph.d / (re * re);
  const Jet uj = Jet::variable(u);
  const Jet b = smoothstep5((uj - kGRise0) / (kGRise1 - kGRise0));
  const Jet g = (1.0 - b) * (0.5 * re * re) * uj * uj + b;
  out.g = g.v;
  out.gp = g.d / re;
  out.gpp = g.dd / (re * re);
  return out;
}

std::vector<double> ProfileFunctions::breakpoints() const {
  if (family_ == ProfileFamily::Dim3) return {kG3Lo, kF3Lo, kF3Hi};
  std::vector<double> out;
  for (double k : knots_)
    if (k > 0.0) out.push_back(k * r_max_);
  out.push_back(kGRise0 * r_max_);
  out.push_back(kGRise1 * r_max_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double ProfileFunctions::integral_h() const {
  using boost::math::quadrature::gauss_kronrod;
  auto pts = breakpoints();
  pts.insert(pts.begin(), 0.0);
  pts.push_back(r_max_);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] <= pts[i]) continue;
    total += gauss_kronrod<double, 31>::integrate([this](double r) { return h(r); }, pts[i], pts[i + 1], 10, 1e-13);
  }
  return total;
}

namespace {

struct CheckBuilder {
  std::vector<ProfileCheck> checks;
  // Records a "must be ≤ 0" quantity.
  void add(const std::string& name, double worst_violation) {
    checks.push_back({name, worst_violation <= 0.0, worst_violation});
  }
};

}  // namespace

std::vector<ProfileCheck> ProfileFunctions::validate(std::size_t samples) const {
  CheckBuilder cb;
  const double R = r_max_;
  std::vector<double> rs(samples + 1);
  for (std::size_t i = 0; i <= samples; ++i) rs[i] = R * static_cast<double>(i) / static_cast<double>(samples);
  const double tiny = 1e-12;

  auto worst = [&](auto&& pred_violation, double lo, double hi, bool open_lo = false, bool open_hi = false) {
    double w = -std::numeric_limits<double>::infinity();
    for (double r : rs) {
      if (r < lo || r > hi) continue;
      if ((open_lo && r == lo) || (open_hi && r == hi)) continue;
      w = std::max(w, pred_violation(r, eval(r)));
    }
    return w;
  };

  if (family_ == ProfileFamily::Dim3) {
    cb.add("f' < 0 on (0,1]", worst([](double, const ProfileSample& p) { return p.fp; }, 0.0, 1.0, true));
    cb.add("f = 2 - r near 1",
           worst([&](double r, const ProfileSample& p) { return std::abs(p.f - (2.0 - r)) - tiny; }, 0.85, 1.0));
    cb.add("f = 2 - r^4 near 0",
           worst([&](double r, const ProfileSample& p) { return std::abs(p.f - (2.0 - r * r * r * r)) - tiny; }, 0.0,
                 0.15));
    cb.add("g' > 0 on (0,1)", worst([](double, const ProfileSample& p) { return -p.gp; }, 0.0, 1.0, true, true));
    const ProfileSample end = eval(1.0);
    cb.add("g(1) = 1, g'(1) = g''(1) = 0",
           std::max({std::abs(end.g - 1.0), std::abs(end.gp), std::abs(end.gpp)}) - tiny);
    cb.add("g = r^2/2 near 0",
           worst([&](double r, const ProfileSample& p) { return std::abs(p.g - 0.5 * r * r) - tiny; }, 0.0, 0.05));
    cb.add("h = r(2 + r^4) near 0", worst([&](double r, const ProfileSample& p) {
             return std::abs(p.h() - r * (2.0 + r * r * r * r)) - 1e-10;
           }, 0.0, 0.05));
    cb.add("h > 0 on (0,1]", worst([](double, const ProfileSample& p) { return -p.h(); }, 0.0, 1.0, true));
  } else {
    const double s = s_;
    cb.add("f = 1 near 0", worst([&](double, const ProfileSample& p) { return std::abs(p.f - 1.0) - tiny; }, 0.0,
                                 kRiseA0 * R));
    cb.add("f = s/r near r_eps",
           worst([&](double r, const ProfileSample& p) { return std::abs(p.f - s / r) - tiny; }, b1_ * R, R));
    cb.add("f(r_eps/2) = 1/2", std::abs(eval(R / 2.0).f - 0.5) - tiny);
    cb.add("-2/r_eps <= f' <= 0", worst([&](double, const ProfileSample& p) {
             return std::max(p.fp, -2.0 / R - p.fp) - tiny;
           }, 0.0, R));
    cb.add("f' < 0 on [r_eps/2, r_eps]",
           worst([](double, const ProfileSample& p) { return p.fp; }, R / 2.0, R));
    cb.add("g = 1 on [r_eps/2, r_eps]",
           worst([&](double, const ProfileSample& p) { return std::abs(p.g - 1.0) - tiny; }, R / 2.0, R));
    cb.add("g = r^2/2 near 0", worst([&](double r, const ProfileSample& p) {
             return std::abs(p.g - 0.5 * r * r) - tiny;
           }, 0.0, kGRise0 * R));
    cb.add("0 <= g' <= 4/r_eps", worst([&](double, const ProfileSample& p) {
             return std::max(-p.gp, p.gp - 4.0 / R) - tiny;
           }, 0.0, R));
    cb.add("g' > 0 on (0, r_eps/2)",
           worst([](double, const ProfileSample& p) { return -p.gp; }, 0.0, R / 2.0, true, true));
    cb.add("h > 0 on (0, r_eps]", worst([](double, const ProfileSample& p) { return -p.h(); }, 0.0, R, true));
    cb.add("h = r near 0", worst([&](double r, const ProfileSample& p) { return std::abs(p.h() - r) - tiny; }, 0.0,
                                 kRiseA0 * R));
    cb.add("h <= 6/r_eps", worst([&](double, const ProfileSample& p) { return p.h() - 6.0 / R; }, 0.0, R));
    cb.add("g'/h <= 2", worst([&](double, const ProfileSample& p) { return p.gp / p.h() - 2.0; }, 0.0, R, true));
  }
  // C² splices: a jump in f'' or g'' across a breakpoint does not shrink
  // with the probe offset, a continuous one does.
  double jump = 0.0;
  for (double b : breakpoints()) {
    auto gap = [&](double d) {
      const ProfileSample lo = eval(b - d);
      const ProfileSample hi = eval(b + d);
      return std::abs(hi.fpp - lo.fpp) + std::abs(hi.gpp - lo.gpp);
    };
    const double coarse = gap(1e-6 * R);
    const double fine = gap(1e-8 * R);
    const ProfileSample at = eval(b);
    const double scale = 1.0 + std::abs(at.fpp) + std::abs(at.gpp);
    jump = std::max(jump, (fine - 0.05 * coarse) / scale);
  }
  cb.add("C2 across splices", jump - 1e-6);
  return cb.checks;
}

ProfileFunctions build_profiles(double r_eps, double s, ProfileFamily family, double eps) {
  if (family == ProfileFamily::Dim3) return ProfileFunctions::dim3(s);
  return ProfileFunctions::higher(r_eps, s, eps);
}

bool all_passed(const std::vector<ProfileCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const ProfileCheck& c) { return c.passed; });
}

}  // namespace entropia
