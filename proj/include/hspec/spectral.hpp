#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "hspec/cutoff.hpp"
#include "hspec/hermite.hpp"

namespace hspec {

inline constexpr double pi = 3.14159265358979323846;

// Scalar symbol m(k) acting on the k-th eigenspace; the eigenvalue is 2k + d.
struct SpectralMultiplier {
  std::function<cplx(int)> fn;
  cplx operator()(int k) const { return fn(k); }
};

inline SpectralCoefficients multiplier_apply(const SpectralCoefficients& f,
                                             const SpectralMultiplier& m) {
  SpectralCoefficients out = f;
  std::vector<cplx> mv(static_cast<std::size_t>(f.k_max) + 1);
  for (int k = 0; k <= f.k_max; ++k) mv[static_cast<std::size_t>(k)] = m(k);
  for (auto& [a, v] : out.c) v *= mv[static_cast<std::size_t>(a.degree())];
  return out;
}

inline GridFunction multiplier_apply(const GridFunction& f, const SpectralMultiplier& m,
                                     int k_max) {
  return synthesize(multiplier_apply(analyze(f, k_max), m), f.grid());
}

// -----------------------------------------------------------------------------
// Spectral projection, expansion route: keep the |alpha| = k coefficients.
// -----------------------------------------------------------------------------

inline SpectralCoefficients project_level(const SpectralCoefficients& f, int k) {
  SpectralCoefficients out;
  out.dim = f.dim;
  out.k_max = f.k_max;
  for (const auto& [a, v] : f.c)
    if (a.degree() == k) out.c.emplace(a, v);
  return out;
}

inline GridFunction project_expansion(const SpectralCoefficients& f, int k,
                                      const GridPtr& out_grid) {
  return synthesize(project_level(f, k), out_grid);
}

inline GridFunction project_expansion(const GridFunction& f, int k) {
  return synthesize(project_level(analyze(f, k), k), f.grid());
}

// -----------------------------------------------------------------------------
// Propagator e^{-itH}.
// -----------------------------------------------------------------------------

inline SpectralCoefficients propagator_spectral(const SpectralCoefficients& f, double t) {
  SpectralCoefficients out = f;
  const int d = f.dim;
  for (auto& [a, v] : out.c) v *= std::polar(1.0, -t * (2.0 * a.degree() + d));
  return out;
}

namespace detail {

// Complex-matrix analogue of apply_axis.
inline std::vector<cplx> apply_axis_cplx(const std::vector<cplx>& in,
                                         std::vector<std::size_t>& ext, int axis,
                                         const std::vector<cplx>& M, std::size_t rows,
                                         std::size_t cols) {
  std::size_t outer = 1, inner = 1;
  for (int a = 0; a < axis; ++a) outer *= ext[static_cast<std::size_t>(a)];
  for (std::size_t a = static_cast<std::size_t>(axis) + 1; a < ext.size(); ++a) inner *= ext[a];
  std::vector<cplx> out(outer * rows * inner, cplx(0.0, 0.0));
  for (std::size_t o = 0; o < outer; ++o) {
    const cplx* inb = in.data() + o * cols * inner;
    cplx* outb = out.data() + o * rows * inner;
    for (std::size_t r = 0; r < rows; ++r) {
      const cplx* Mr = M.data() + r * cols;
      cplx* orow = outb + r * inner;
      for (std::size_t cc = 0; cc < cols; ++cc) {
        const cplx m = Mr[cc];
        if (m == cplx(0.0, 0.0)) continue;
        const cplx* irow = inb + cc * inner;
        for (std::size_t i = 0; i < inner; ++i) orow[i] += m * irow[i];
      }
    }
  }
  ext[static_cast<std::size_t>(axis)] = rows;
  return out;
}

// Oscillatory tensor-product quadrature for the propagator kernel at reduced
// time u in (0, pi/2): per-axis matrices
//   M[i][j] = exp(i((x_i^2 + y_j^2)/2 cot 2u - x_i y_j csc 2u)) w_j,
// assembled without the normalizing constant (applied by the caller).
inline std::vector<cplx> mehler_raw_apply(const GridFunction& f, double u) {
  const GridPtr& g = f.grid();
  const int d = g->dim();
  const double c2 = std::cos(2.0 * u) / std::sin(2.0 * u);  // cot
  const double c1 = 1.0 / std::sin(2.0 * u);                // csc
  std::vector<std::size_t> ext(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) ext[static_cast<std::size_t>(a)] = g->axis_size(a);
  std::vector<cplx> tensor = f.values();
  for (int a = 0; a < d; ++a) {
    const auto& ax = g->axis(a);
    const std::size_t n = ax.nodes.size();
    std::vector<cplx> M(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = ax.nodes[i];
      for (std::size_t j = 0; j < n; ++j) {
        const double yj = ax.nodes[j];
        const double phase = 0.5 * (xi * xi + yj * yj) * c2 - xi * yj * c1;
        M[i * n + j] = std::polar(ax.weights[j], phase);
      }
    }
    tensor = apply_axis_cplx(tensor, ext, a, M, n, n);
  }
  return tensor;
}

inline GridFunction parity_flip(const GridFunction& f) {
  const GridPtr& g = f.grid();
  const int d = g->dim();
  GridFunction out(g);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  const std::size_t n = g->size();
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t rflat = 0;
    for (int a = 0; a < d; ++a)
      rflat = rflat * g->axis_size(a) +
              (g->axis_size(a) - 1 - static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]));
    out[rflat] = f[flat];
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < static_cast<int>(g->axis_size(a))) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return out;
}

}  // namespace detail

// The kernel constant in front of (sin 2t)^{-d/2}, calibrated once per
// dimension by matching the quadrature route against the spectral route on
// Phi_0 at t = pi/8. Expected value (2 pi)^{-d/2} e^{-i pi d / 4}; we fit it
// rather than commit to a branch convention for the root.
inline cplx mehler_constant(int d) {
  static std::mutex mu;
  static std::unordered_map<int, cplx> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;

  const int n = (d == 1) ? 1025 : (d == 2) ? 193 : 91;
  const GridPtr g = Grid::uniform_box(d, 6.5, n);
  GridFunction phi0 = sample(g, [d](const double* x) {
    double x2 = 0.0;
    for (int i = 0; i < d; ++i) x2 += x[i] * x[i];
    return std::pow(pi, -0.25 * d) * std::exp(-0.5 * x2);
  });
  const double t0 = pi / 8.0;
  std::vector<cplx> raw = detail::mehler_raw_apply(phi0, t0);
  const double scale = std::pow(std::sin(2.0 * t0), -0.5 * d);
  GridFunction rawf(g, std::move(raw));
  for (auto& v : rawf.values()) v *= scale;
  GridFunction spec = phi0;
  const cplx phase = std::polar(1.0, -t0 * d);
  for (auto& v : spec.values()) v *= phase;
  const cplx c = quad_inner(spec, rawf) / quad_inner(rawf, rawf);
  cache.emplace(d, c);
  return c;
}

// Quadrature route for e^{-itH} f on a uniform-box grid. Valid at any t with
// |sin 2t| >= guard: t is reduced mod pi/2 using
//   e^{-i (m pi/2) H} f(x) = e^{-i m pi d / 2} f((-1)^m x),
// which keeps sin of the reduced time positive and the root branch fixed.
inline GridFunction propagator_mehler(const GridFunction& f, double t,
                                      double guard = 1e-3) {
  if (std::fabs(std::sin(2.0 * t)) < guard)
    throw singularity_error("propagator_mehler: |sin 2t| below the singularity guard");
  if (f.grid()->kind() != GridKind::uniform_box)
    throw parameter_error("propagator_mehler: requires a uniform-box grid");
  const int d = f.grid()->dim();
  const long m = static_cast<long>(std::floor(t / (0.5 * pi)));
  const double u = t - 0.5 * pi * m;

  const GridFunction* src = &f;
  GridFunction flipped;
  if (m % 2 != 0) {
    flipped = detail::parity_flip(f);
    src = &flipped;
  }
  std::vector<cplx> tensor = detail::mehler_raw_apply(*src, u);
  const cplx c = mehler_constant(d) * std::pow(std::sin(2.0 * u), -0.5 * d) *
                 std::polar(1.0, -0.5 * pi * d * static_cast<double>(m));
  GridFunction out(f.grid(), std::move(tensor));
  for (auto& v : out.values()) v *= c;
  return out;
}

// -----------------------------------------------------------------------------
// Spectral projection, integral route:
//   Pi_k f = (1/2pi) int_{-pi}^{pi} e^{i(t/2)(2k+d)} e^{-i(t/2)H} f dt,
// hybrid rule: quadrature with the oscillatory kernel on delta <= |t| <= pi -
// delta, the spectral representation on the singular windows.
// -----------------------------------------------------------------------------

struct ProjectIntegralOptions {
  double delta = 0.1;
  int panels = 24;     // Gauss-Legendre panels per half window
  int panel_nodes = 8;
};

namespace detail {

// Nodes/weights of the 8-point Gauss-Legendre rule on [-1, 1].
inline void gauss_legendre_8(std::vector<double>& x, std::vector<double>& w) {
  x = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
       0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
  w = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
       0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
}

// Exact window integrals of e^{itm} over the two singular neighborhoods
// (|t| < delta) and (pi - delta < |t| < pi), for integer m.
inline double singular_window_weight(int m, double delta) {
  if (m == 0) return 4.0 * delta;
  return 2.0 * std::sin(delta * m) / m - 2.0 * std::sin((pi - delta) * m) / m;
}

}  // namespace detail

// Integral route for band-limited input. Returns the projection sampled on
// out_grid (uniform-box). d in {1, 2, 3}.
inline GridFunction project_integral(const SpectralCoefficients& f, int k,
                                     const GridPtr& out_grid,
                                     const ProjectIntegralOptions& opts = {}) {
  const int d = f.dim;
  if (d < 1 || d > 3)
    throw parameter_error("project_integral: kernel quadrature supported for d in {1,2,3}");
  if (out_grid->kind() != GridKind::uniform_box)
    throw parameter_error("project_integral: needs a uniform-box output grid");

  // Spectral windows: sum over levels j of the exact window weight.
  SpectralCoefficients spec_part = f;
  for (auto& [a, v] : spec_part.c)
    v *= detail::singular_window_weight(k - a.degree(), opts.delta) / (2.0 * pi);
  GridFunction acc = synthesize(spec_part, out_grid);

  // Oscillatory-kernel windows +-[delta, pi - delta].
  GridFunction fg = synthesize(f, out_grid);
  std::vector<double> gx, gw;
  detail::gauss_legendre_8(gx, gw);
  const double lo = opts.delta, hi = pi - opts.delta;
  const double pw = (hi - lo) / opts.panels;
  for (int sign = -1; sign <= 1; sign += 2) {
    for (int p = 0; p < opts.panels; ++p) {
      const double a = lo + pw * p;
      for (std::size_t qn = 0; qn < gx.size(); ++qn) {
        const double t = sign * (a + 0.5 * pw * (gx[qn] + 1.0));
        const double w = 0.5 * pw * gw[qn] / (2.0 * pi);
        GridFunction ut = propagator_mehler(fg, 0.5 * t);
        const cplx ph = std::polar(w, 0.5 * t * (2.0 * k + d));
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += ph * ut[i];
      }
    }
  }
  return acc;
}

// Shared-evolution variant: all requested levels reuse the same kernel
// quadrature states (the expensive part is k-independent).
inline std::vector<GridFunction> project_integral_batch(const SpectralCoefficients& f,
                                                        const std::vector<int>& ks,
                                                        const GridPtr& out_grid,
                                                        const ProjectIntegralOptions& opts = {}) {
  const int d = f.dim;
  if (d < 1 || d > 3)
    throw parameter_error("project_integral: kernel quadrature supported for d in {1,2,3}");
  std::vector<GridFunction> out;
  out.reserve(ks.size());
  for (int k : ks) {
    SpectralCoefficients spec_part = f;
    for (auto& [a, v] : spec_part.c)
      v *= detail::singular_window_weight(k - a.degree(), opts.delta) / (2.0 * pi);
    out.push_back(synthesize(spec_part, out_grid));
  }

  GridFunction fg = synthesize(f, out_grid);
  std::vector<double> gx, gw;
  detail::gauss_legendre_8(gx, gw);
  const double lo = opts.delta, hi = pi - opts.delta;
  const double pw = (hi - lo) / opts.panels;
  for (int sign = -1; sign <= 1; sign += 2) {
    for (int p = 0; p < opts.panels; ++p) {
      const double a = lo + pw * p;
      for (std::size_t qn = 0; qn < gx.size(); ++qn) {
        const double t = sign * (a + 0.5 * pw * (gx[qn] + 1.0));
        const double w = 0.5 * pw * gw[qn] / (2.0 * pi);
        GridFunction ut = propagator_mehler(fg, 0.5 * t);
        for (std::size_t ki = 0; ki < ks.size(); ++ki) {
          const cplx ph = std::polar(w, 0.5 * t * (2.0 * ks[ki] + d));
          GridFunction& dst = out[ki];
          for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += ph * ut[i];
        }
      }
    }
  }
  return out;
}

// -----------------------------------------------------------------------------
// Resolvent powers (H - z)^{-m} on band-limited data.
// -----------------------------------------------------------------------------

inline double spectrum_distance(cplx z, int d) {
  const double re = z.real();
  double best = std::abs(z - cplx(d, 0.0));
  const long k0 = std::lround((re - d) / 2.0);
  for (long k = std::max(0L, k0 - 1); k <= k0 + 1; ++k)
    best = std::min(best, std::abs(z - cplx(2.0 * k + d, 0.0)));
  return best;
}

inline SpectralCoefficients resolvent(const SpectralCoefficients& f, cplx z, int m) {
  if (m < 1) throw parameter_error("resolvent: power m must be >= 1");
  const int d = f.dim;
  if (spectrum_distance(z, d) < 1e-8)
    throw spectral_point_error("resolvent: z is (numerically) on the spectrum 2N0 + d");
  SpectralCoefficients out = f;
  for (auto& [a, v] : out.c) {
    const cplx den = cplx(2.0 * a.degree() + d, 0.0) - z;
    v *= std::pow(den, -m);
  }
  return out;
}

struct ResolventGridResult {
  GridFunction value;
  double truncation_tail_l2 = 0.0;  // ||f - P_{<=K} f||_2 estimate on the grid
};

inline ResolventGridResult resolvent(const GridFunction& f, cplx z, int m, int k_max) {
  SpectralCoefficients sc = analyze(f, k_max);
  const double f2 = l2_norm(f);
  const double c2 = sc.l2();
  ResolventGridResult out{synthesize(resolvent(sc, z, m), f.grid()),
                          std::sqrt(std::max(0.0, f2 * f2 - c2 * c2))};
  return out;
}

// -----------------------------------------------------------------------------
// H^{-s} by the spectral symbol or by quadrature of the heat-semigroup
// representation  H^{-s} f = Gamma(s)^{-1} int_0^inf t^{s-1} e^{-tH} f dt.
// -----------------------------------------------------------------------------

enum class FractionalRoute { spectral, heat_integral };

namespace detail {

// Gamma(s)^{-1} int_0^inf t^{s-1} e^{-t lambda} dt by trapezoid in u = log t
// (equals lambda^{-s}; kept independent so the two routes cross-check).
inline std::vector<double> heat_integral_weights(double s, int d, int k_max) {
  const double h = 0.05;
  const double u_lo = -(40.0 / s + 2.0);
  const double u_hi = std::log(50.0 / d) + 2.0;
  const int n = static_cast<int>(std::ceil((u_hi - u_lo) / h)) + 1;
  const double lg = std::lgamma(s);
  std::vector<double> w(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (int k = 0; k <= k_max; ++k) {
    const double lambda = 2.0 * k + d;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = u_lo + h * i;
      const double e = s * u - lambda * std::exp(u) - lg;
      const double v = (e < -745.0) ? 0.0 : std::exp(e);
      acc += (i == 0 || i == n - 1) ? 0.5 * v : v;
    }
    w[static_cast<std::size_t>(k)] = acc * h;
  }
  return w;
}

}  // namespace detail

inline SpectralCoefficients fractional_inverse(const SpectralCoefficients& f, double s,
                                               FractionalRoute route) {
  const int d = f.dim;
  if (!(s > 0.0 && s < 0.5 * d))
    throw parameter_error("fractional_inverse: s must lie in (0, d/2)");
  SpectralCoefficients out = f;
  if (route == FractionalRoute::spectral) {
    for (auto& [a, v] : out.c) v *= std::pow(2.0 * a.degree() + d, -s);
  } else {
    const std::vector<double> w = detail::heat_integral_weights(s, d, f.k_max);
    for (auto& [a, v] : out.c) v *= w[static_cast<std::size_t>(a.degree())];
  }
  return out;
}

// -----------------------------------------------------------------------------
// Multiplier split G((2n+d-H)/2) = J_n + K_n around the resonant level n.
// -----------------------------------------------------------------------------

using ScalarSymbol = std::function<cplx(double)>;

inline std::pair<SpectralMultiplier, SpectralMultiplier> jn_kn_multipliers(
    const ScalarSymbol& G, int n, const std::function<double(double)>& phi_cut) {
  if (n < 1) throw parameter_error("jn_kn_multipliers: n must be >= 1");
  SpectralMultiplier J{[G, n, phi_cut](int k) -> cplx {
    return G(static_cast<double>(n - k)) * phi_cut(static_cast<double>(n - k) / n);
  }};
  SpectralMultiplier K{[G, n, phi_cut](int k) -> cplx {
    const cplx g = G(static_cast<double>(n - k));
    return g - g * phi_cut(static_cast<double>(n - k) / n);
  }};
  return {J, K};
}

// zeta_n(t) = -(i/pi) e^{i(t/2)(2n+d)} sum_{k=1}^n G(k) sin(tk) phi(k/n)
inline cplx zeta_n(const ScalarSymbol& G, int n, const std::function<double(double)>& phi_cut,
                   double t, int d = 3) {
  if (n < 1) throw parameter_error("zeta_n: n must be >= 1");
  cplx s(0.0, 0.0);
  for (int k = 1; k <= n; ++k)
    s += G(static_cast<double>(k)) * std::sin(t * k) * phi_cut(static_cast<double>(k) / n);
  return cplx(0.0, -1.0 / pi) * std::polar(1.0, 0.5 * t * (2.0 * n + d)) * s;
}

// Fast sup_t |zeta_n| over a uniform t-grid on (0, pi] (|zeta| is even in t).
// Uses an incremental rotation for sin(tk) instead of per-term sin calls.
inline double zeta_sup_scan(const ScalarSymbol& G, int n,
                            const std::function<double(double)>& phi_cut, int t_count) {
  std::vector<cplx> gk(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k)
    gk[static_cast<std::size_t>(k)] = G(static_cast<double>(k)) * phi_cut(static_cast<double>(k) / n);
  double sup = 0.0;
  for (int it = 1; it <= t_count; ++it) {
    const double t = pi * it / t_count;
    const cplx rot = std::polar(1.0, t);
    cplx e(1.0, 0.0);
    cplx s(0.0, 0.0);
    for (int k = 1; k <= n; ++k) {
      e *= rot;
      s += gk[static_cast<std::size_t>(k)] * e.imag();
    }
    sup = std::max(sup, std::abs(s) / pi);
  }
  return sup;
}

// sigma_k(t) = sum_{j=1}^k sin(jt)/j
inline double sigma_partial(int k, double t) {
  if (k < 1) throw parameter_error("sigma_partial: k must be >= 1");
  double s = 0.0;
  for (int j = 1; j <= k; ++j) s += std::sin(j * t) / j;
  return s;
}

// sup over 1 <= k <= k_max and the uniform t-grid of step pi/t_count on
// (0, pi] of |sigma_k(t)|, via one running partial sum per t.
inline double sigma_sup_scan(int k_max, int t_count) {
  double sup = 0.0;
  for (int it = 1; it <= t_count; ++it) {
    const double t = pi * it / t_count;
    const cplx rot = std::polar(1.0, t);
    cplx e(1.0, 0.0);
    double s = 0.0;
    for (int j = 1; j <= k_max; ++j) {
      e *= rot;
      s += e.imag() / j;
      const double a = std::fabs(s);
      if (a > sup) sup = a;
    }
  }
  return sup;
}

}  // namespace hspec
