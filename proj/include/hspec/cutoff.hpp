#pragma once

#include <cmath>
#include <vector>

namespace hspec {

// exp(-1/u) mollifier, extended by zero.
inline double mollifier(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

// Smooth monotone step: 0 for u <= 0, 1 for u >= 1 (exactly, not just to
// rounding: the competing mollifier vanishes outside (0,1)).
inline double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = mollifier(u);
  const double b = mollifier(1.0 - u);
  return a / (a + b);
}

// Smooth decreasing cap: 1 for u <= 1/2, 0 for u >= 1.
inline double smooth_cap(double u) { return smooth_step(2.0 * (1.0 - u)); }

// Nonnegative smooth even bump: phi = 1 on [-1/2, 1/2], phi = 0 for |t| >= 1,
// non-increasing on t > 0. The monotonicity matters: the trigonometric-sum
// bound that keeps zeta_n uniformly bounded uses it, and the harness re-runs
// that sweep with the non-monotone variant below as a negative control.
struct CutoffPhi {
  double operator()(double t) const { return smooth_cap(std::fabs(t)); }
};

// Same support and plateau as CutoffPhi but with an extra hump on
// 0.55 < |t| < 0.95, so it is not monotone on t > 0.
struct NonMonotonePhi {
  double operator()(double t) const {
    const double u = std::fabs(t);
    double v = smooth_cap(u);
    if (u > 0.55 && u < 0.95) {
      const double w = (u - 0.75) / 0.20;  // in (-1, 1)
      v += 0.8 * std::exp(1.0) * mollifier(1.0 - w * w);
    }
    return v;
  }
};

// Dyadic frequency bump supported in [1/4, 1], normalized so that
// sum_j |eta(2^{-j} t)|^2 = 1 exactly for every t > 0.
//
// Built from the telescoping difference chi(t) - chi(2t) with
// chi = smooth_cap, which already satisfies sum_j rho(2^{-j} t) = 1.
inline double dyadic_bump_raw(double t) {
  if (t <= 0.25 || t >= 1.0) return 0.0;
  return smooth_cap(t) - smooth_cap(2.0 * t);
}

inline double dyadic_bump_l2(double t) {
  if (t <= 0.0) return 0.0;
  const double r = dyadic_bump_raw(t);
  if (r == 0.0) return 0.0;
  // Only scales j with 2^{-j} t in (1/4, 1) contribute; scan a safe window.
  const int j0 = static_cast<int>(std::floor(std::log2(t)));
  double s2 = 0.0;
  for (int j = j0 - 1; j <= j0 + 2; ++j) {
    const double rj = dyadic_bump_raw(std::ldexp(t, -j));
    s2 += rj * rj;
  }
  return r / std::sqrt(s2);
}

}  // namespace hspec
