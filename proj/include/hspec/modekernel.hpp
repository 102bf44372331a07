#pragma once

#include <cmath>
#include <complex>

#include "hspec/cutoff.hpp"
#include "hspec/errors.hpp"
#include "hspec/spectral.hpp"

namespace hspec {

// Per-mode scalar factor of the operator-valued convolution kernel: the
// Green's function of c' + 2a c = g,
//   kappa_a(t) =  e^{-2at} [t > 0]   (a > 0, causal)
//   kappa_a(t) = -e^{-2at} [t < 0]   (a < 0, anticausal)
// with the Fourier midpoint value sign(a)/2 at t = 0.
struct ModeKernel {
  double rate;  // a = beta - k

  explicit ModeKernel(double a) : rate(a) {
    if (std::fabs(a) < 1e-8) throw gap_error("ModeKernel: |beta - k| below the gap constant");
  }

  double operator()(double t) const {
    if (t == 0.0) return rate > 0.0 ? 0.5 : -0.5;
    if (rate > 0.0) return t > 0.0 ? std::exp(-2.0 * rate * t) : 0.0;
    return t < 0.0 ? -std::exp(-2.0 * rate * t) : 0.0;
  }
};

inline double mode_kernel_eval(double a, double t) { return ModeKernel(a)(t); }

namespace detail {

// tail_si(x) = int_x^inf sin(u)/u du for large x (asymptotic expansion).
inline double tail_si(double x) {
  const double ix = 1.0 / x;
  return std::cos(x) * ix * (1.0 - 2.0 * ix * ix) + std::sin(x) * ix * ix * (1.0 - 6.0 * ix * ix);
}

}  // namespace detail

// Independent check of the closed form: (1/2) int_{-T}^{T} e^{2 pi i t tau} /
// (pi i tau + a) d tau plus the analytic 1/(pi i tau) tail beyond T.
inline cplx mode_kernel_tau_quadrature(double a, double t, double tau_max = 2000.0,
                                       int points_per_unit = 16) {
  const int n = static_cast<int>(tau_max * points_per_unit);
  const double h = tau_max / n;
  cplx acc(0.0, 0.0);
  for (int i = -n; i <= n; ++i) {
    const double tau = h * i;
    const cplx v = std::polar(1.0, 2.0 * pi * t * tau) / cplx(a, pi * tau);
    acc += (std::abs(i) == n) ? 0.5 * v : v;
  }
  acc *= h;
  if (t != 0.0) {
    // int_{|tau|>T} e^{2 pi i t tau}/(pi i tau) dtau = (2/pi) sign(t) tail_si(2 pi |t| T)
    const double x = 2.0 * pi * std::fabs(t) * tau_max;
    acc += (t > 0 ? 1.0 : -1.0) * (2.0 / pi) * detail::tail_si(x);
  }
  return 0.5 * acc;
}

// Weight of the dyadic frequency piece: the paper's psi-localized kernel acts
// on the k-th eigenspace by
//   w_j(a, t) = (1/2) int e^{2 pi i t tau} psi(|tau|/2^j) / (pi i tau + a) dtau,
// psi being the telescoping bump on [1/4, 1] (sum_j psi(2^{-j} tau) = 1).
inline cplx dyadic_kernel_weight(double a, double t, int j) {
  const double lo = std::ldexp(0.25, j), hi = std::ldexp(1.0, j);
  // Oscillation over the band is 2 pi |t| (hi - lo); size panels accordingly.
  const int panels = std::max(8, static_cast<int>(std::ceil(4.0 * std::fabs(t) * (hi - lo))));
  static const double gx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                               -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
  static const double gw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                               0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};
  cplx acc(0.0, 0.0);
  const double pw = (hi - lo) / panels;
  for (int sign = -1; sign <= 1; sign += 2) {
    for (int p = 0; p < panels; ++p) {
      const double a0 = lo + pw * p;
      for (int q = 0; q < 8; ++q) {
        const double tau = sign * (a0 + 0.5 * pw * (gx[q] + 1.0));
        acc += 0.5 * pw * gw[q] * dyadic_bump_raw(std::fabs(tau) / hi) *
               std::polar(1.0, 2.0 * pi * t * tau) / cplx(a, pi * tau);
      }
    }
  }
  return 0.5 * acc;
}

}  // namespace hspec
