#pragma once

#include <string>
#include <vector>

namespace entropia {

enum class ProfileFamily { Dim3, Higher };

/// f, g and their first two derivatives at one radius.
struct ProfileSample {
  double f = 0.0, fp = 0.0, fpp = 0.0;
  double g = 0.0, gp = 0.0, gpp = 0.0;

  double h() const { return f * gp - fp * g; }
  double hp() const { return f * gpp - fpp * g; }
};

struct ProfileCheck {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // largest violation, or the extreme value checked
};

/// Radial profiles for contact forms g(r) dϑ + κ f(r) dx near a binding.
///
/// Dim3: on [0, 1], f = 2 − r⁴ near 0 and 2 − r near 1, g = r²/2 near 0 and
/// flat to 1 at r = 1; κ = s. Built from C^∞ exponential blends.
///
/// Higher: on [0, r_ε] with 0 < s < r_ε/2 ≤ 1/2, f = 1 near 0, f = s/r near
/// r_ε, f(r_ε/2) = 1/2, g = r²/2 near 0 and g = 1 on [r_ε/2, r_ε]; κ = ε/2π
/// so the binding circle has volume ε. Built from degree-7 smoothstep
/// splices; f is the integral of a piecewise polynomial, evaluated exactly
/// by Gauss–Legendre.
class ProfileFunctions {
 public:
  static ProfileFunctions dim3(double s);
  static ProfileFunctions higher(double r_eps, double s, double eps);

  ProfileFamily family() const { return family_; }
  double r_max() const { return r_max_; }
  double s() const { return s_; }
  double eps() const { return eps_; }
  /// Coefficient κ of f·dx in the contact form.
  double kappa() const;

  ProfileSample eval(double r) const;
  double f(double r) const { return eval(r).f; }
  double g(double r) const { return eval(r).g; }
  double h(double r) const { return eval(r).h(); }

  /// ∫₀^{r_max} h dr.
  double integral_h() const;
  /// Points where pieces are spliced (C² is checked across them).
  std::vector<double> breakpoints() const;

  /// Samples the interval and checks every listed property of the family.
  std::vector<ProfileCheck> validate(std::size_t samples = 10000) const;

 private:
  template <class T> T phi(const T& u) const;  // −F′ for the higher family
  double big_f(double u) const;

  ProfileFamily family_ = ProfileFamily::Dim3;
  double r_max_ = 1.0;
  double s_ = 0.0;
  double eps_ = 0.0;
  double sigma_ = 0.0;  // s / r_ε
  double e0_ = 0.0, b1_ = 0.0, c_a_ = 0.0, c_b_ = 0.0;
  std::vector<double> knots_;
  std::vector<double> cumulative_;
};

/// Throws InfeasibleParameters if s ≥ r_ε/2 (higher family) or s ≤ 0.
ProfileFunctions build_profiles(double r_eps, double s, ProfileFamily family, double eps = 1.0);

bool all_passed(const std::vector<ProfileCheck>& checks);

}  // namespace entropia
