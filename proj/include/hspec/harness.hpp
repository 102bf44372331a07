#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hspec/lorentz.hpp"
#include "hspec/rng.hpp"
#include "hspec/spectral.hpp"

namespace hspec {

// -----------------------------------------------------------------------------
// Probes
// -----------------------------------------------------------------------------

enum class ProbeFamilyKind { gaussian_bumps, hermite_packets, indicators, random_bandlimited };

// One test input. Spectral operators act on `coeffs`; norms are evaluated on
// `field` (the probe realized on the norm grid), so every reported ratio is a
// true ratio for the function actually used.
struct Probe {
  std::string id;
  SpectralCoefficients coeffs;
  GridFunction field;
  double indicator_measure = 0.0;  // exact |E| for indicator probes
  std::vector<double> params;      // free parameters for the optimizer
};

struct ProbeFamilyConfig {
  ProbeFamilyKind kind = ProbeFamilyKind::random_bandlimited;
  std::uint64_t seed = 1;
  int count = 8;
  int d = 1;
  int k_max = 16;       // spectral truncation of generated probes
  int level = 0;        // hermite_packets: eigenspace level
  double width_lo = 0.4, width_hi = 2.0;     // gaussian_bumps
  double center_hi = 1.5;                    // gaussian_bumps: |center| range
  double modulation_hi = 0.0;                // gaussian_bumps: |xi| range
};

namespace detail {

// 1-d coefficients of x -> f(x) on a Gauss-Hermite rule with k_max + 2 nodes.
inline std::vector<cplx> analyze_1d(const std::function<cplx(double)>& f, int k_max) {
  const GridPtr g = Grid::gauss_hermite(1, k_max + 2);
  GridFunction gf = sample(g, [&f](const double* x) { return f(x[0]); });
  SpectralCoefficients sc = analyze(gf, k_max);
  std::vector<cplx> v(static_cast<std::size_t>(k_max) + 1, cplx(0.0, 0.0));
  for (const auto& [a, c] : sc.c) v[static_cast<std::size_t>(a.degree())] = c;
  return v;
}

// Tensor product of per-axis 1-d coefficient vectors, truncated at |alpha| <= k_max.
inline SpectralCoefficients tensor_coeffs(const std::vector<std::vector<cplx>>& axes, int k_max) {
  const int d = static_cast<int>(axes.size());
  SpectralCoefficients out;
  out.dim = d;
  out.k_max = k_max;
  for (int k = 0; k <= k_max; ++k) {
    for (const MultiIndex& a : level_indices(k, d)) {
      cplx v(1.0, 0.0);
      bool ok = true;
      for (int i = 0; i < d && ok; ++i) {
        const auto& ax = axes[static_cast<std::size_t>(i)];
        if (a[i] >= static_cast<int>(ax.size())) { ok = false; break; }
        v *= ax[static_cast<std::size_t>(a[i])];
      }
      if (ok && std::abs(v) > 1e-300) out.c.emplace(a, v);
    }
  }
  return out;
}

// Coefficients of the (separable) modulated Gaussian
//   prod_i exp(-(x_i - c_i)^2 / (2 w^2)) exp(i xi_i x_i).
inline SpectralCoefficients modulated_gaussian_coeffs(int d, double width,
                                                      const std::vector<double>& center,
                                                      const std::vector<double>& xi, int k_max) {
  std::vector<std::vector<cplx>> axes;
  axes.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const double c = center[static_cast<std::size_t>(i)];
    const double m = xi[static_cast<std::size_t>(i)];
    axes.push_back(analyze_1d(
        [width, c, m](double x) {
          return std::exp(-0.5 * (x - c) * (x - c) / (width * width)) * std::polar(1.0, m * x);
        },
        k_max));
  }
  return tensor_coeffs(axes, k_max);
}

}  // namespace detail

inline std::vector<Probe> make_probes(const ProbeFamilyConfig& fc, const GridPtr& norm_grid) {
  std::vector<Probe> out;
  out.reserve(static_cast<std::size_t>(fc.count));
  for (int i = 0; i < fc.count; ++i) {
    Rng rng = Rng::derive(fc.seed, static_cast<std::uint64_t>(i));
    Probe p;
    switch (fc.kind) {
      case ProbeFamilyKind::hermite_packets: {
        p.id = "packet-L" + std::to_string(fc.level) + "-" + std::to_string(i);
        p.coeffs.dim = fc.d;
        p.coeffs.k_max = fc.level;
        for (const MultiIndex& a : level_indices(fc.level, fc.d))
          p.coeffs.c.emplace(a, i == 0 ? cplx(1.0, 0.0) : cplx(rng.normal(), rng.normal()));
        break;
      }
      case ProbeFamilyKind::random_bandlimited: {
        p.id = "rand-K" + std::to_string(fc.k_max) + "-" + std::to_string(i);
        p.coeffs.dim = fc.d;
        p.coeffs.k_max = fc.k_max;
        for (int k = 0; k <= fc.k_max; ++k)
          for (const MultiIndex& a : level_indices(k, fc.d))
            p.coeffs.c.emplace(a, cplx(rng.normal(), rng.normal()));
        break;
      }
      case ProbeFamilyKind::gaussian_bumps: {
        const double w = rng.uniform(fc.width_lo, fc.width_hi);
        std::vector<double> c(static_cast<std::size_t>(fc.d)), m(static_cast<std::size_t>(fc.d));
        for (int a = 0; a < fc.d; ++a) {
          c[static_cast<std::size_t>(a)] = rng.uniform(-fc.center_hi, fc.center_hi);
          m[static_cast<std::size_t>(a)] = fc.modulation_hi > 0.0 ? rng.uniform(-fc.modulation_hi, fc.modulation_hi) : 0.0;
        }
        p.id = "bump-" + std::to_string(i);
        p.coeffs = detail::modulated_gaussian_coeffs(fc.d, w, c, m, fc.k_max);
        p.params.push_back(w);
        for (double v : c) p.params.push_back(v);
        for (double v : m) p.params.push_back(v);
        break;
      }
      case ProbeFamilyKind::indicators: {
        // Off-center boxes and annuli (asymmetric so odd eigenspaces see them).
        const bool annulus = (i % 2 == 1);
        const double s = 0.4 + 0.45 * i;
        const double cx = 0.53;
        p.id = (annulus ? "ind-ann-" : "ind-box-") + std::to_string(i);
        if (annulus) {
          const double r0 = 0.4 * s, r1 = s;
          p.field = sample(norm_grid, [r0, r1, cx, d = fc.d](const double* x) {
            double r2 = 0.0;
            for (int a = 0; a < d; ++a) {
              const double y = x[a] - cx / (a + 1.0);
              r2 += y * y;
            }
            return (r2 >= r0 * r0 && r2 <= r1 * r1) ? 1.0 : 0.0;
          });
          p.indicator_measure = (fc.d == 3)   ? 4.0 / 3.0 * pi * (r1 * r1 * r1 - r0 * r0 * r0)
                                : (fc.d == 2) ? pi * (r1 * r1 - r0 * r0)
                                              : 2.0 * (r1 - r0);
        } else {
          const double h = 0.5 * s;
          p.field = sample(norm_grid, [h, cx, d = fc.d](const double* x) {
            for (int a = 0; a < d; ++a)
              if (std::fabs(x[a] - cx / (a + 1.0)) > h) return 0.0;
            return 1.0;
          });
          p.indicator_measure = std::pow(2.0 * h, fc.d);
        }
        break;
      }
    }
    if (fc.kind != ProbeFamilyKind::indicators) p.field = synthesize(p.coeffs, norm_grid);
    out.push_back(std::move(p));
  }
  return out;
}

// -----------------------------------------------------------------------------
// Operator-norm lower bounds
// -----------------------------------------------------------------------------

// (p, a) norm request; a = p means plain Lebesgue, a = inf the weak norm.
// indicator_input replaces the input norm by |E|^{1/p} (restricted weak type).
struct NormSpec {
  double p = 2.0;
  double a = 2.0;
  bool indicator_input = false;

  static NormSpec lebesgue(double p) { return {p, p, false}; }
  static NormSpec lorentz(double p, double a) { return {p, a, false}; }
  static NormSpec restricted(double p) { return {p, 1.0, true}; }
};

inline double eval_norm(const GridFunction& f, const NormSpec& ns) {
  if (ns.a == ns.p) return lebesgue_norm(f, ns.p);
  return lorentz_norm(f, LorentzExponent(ns.p, ns.a));
}

struct BoundEstimate {
  double ratio = 0.0;
  std::string witness;
  double input_norm = 0.0;
  double output_norm = 0.0;
};

using OperatorHandle = std::function<GridFunction(const Probe&)>;
using ProbeRealizer = std::function<Probe(const std::vector<double>&)>;

namespace detail {
inline double probe_input_norm(const Probe& p, const NormSpec& in) {
  if (in.indicator_input) return std::pow(p.indicator_measure, 1.0 / in.p);
  return eval_norm(p.field, in);
}
}  // namespace detail

// Max over probes of ||T probe|| / ||probe||, optionally refined by
// derivative-free coordinate ascent on the best probe's parameters. A lower
// bound on the operator norm; uniformity claims are always tested as
// boundedness of these lower bounds across sweeps.
inline BoundEstimate opnorm_lower(const OperatorHandle& op, const NormSpec& in_norm,
                                  const NormSpec& out_norm, const std::vector<Probe>& probes,
                                  int optimizer_steps = 0,
                                  const ProbeRealizer& realize = nullptr) {
  BoundEstimate best;
  bool any = false;
  std::vector<double> best_params;
  for (const Probe& p : probes) {
    const double in = detail::probe_input_norm(p, in_norm);
    if (!(in > 0.0)) continue;
    any = true;
    const double out = eval_norm(op(p), out_norm);
    if (out / in > best.ratio) {
      best = {out / in, p.id, in, out};
      best_params = p.params;
    }
  }
  if (!any) throw degenerate_probe_error("opnorm_lower: every probe has zero input norm");

  if (optimizer_steps > 0 && realize && !best_params.empty()) {
    std::vector<double> theta = best_params;
    std::vector<double> step(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j)
      step[j] = 0.25 * std::max(0.2, std::fabs(theta[j]));
    int taken = 0;
    while (taken < optimizer_steps) {
      bool improved = false;
      for (std::size_t j = 0; j < theta.size() && taken < optimizer_steps; ++j) {
        for (double sgn : {+1.0, -1.0}) {
          if (taken >= optimizer_steps) break;
          std::vector<double> cand = theta;
          cand[j] += sgn * step[j];
          ++taken;
          Probe p;
          try {
            p = realize(cand);
          } catch (const error&) {
            continue;  // out-of-range parameter
          }
          const double in = detail::probe_input_norm(p, in_norm);
          if (!(in > 0.0)) continue;
          const double out = eval_norm(op(p), out_norm);
          if (out / in > best.ratio) {
            best = {out / in, p.id + "+opt", in, out};
            theta = cand;
            improved = true;
            break;
          }
        }
      }
      if (!improved)
        for (double& s : step) s *= 0.5;
    }
  }
  return best;
}

// -----------------------------------------------------------------------------
// Sweep bookkeeping
// -----------------------------------------------------------------------------

struct ReportRow {
  std::string experiment;
  int d = 0;
  double p = 0, q = 0, a = 0, b = 0, r = 0, s = 0;
  std::string sweep_key;
  double sweep_value = 0;
  std::string probe;
  double input_norm = 0, output_norm = 0, ratio = 0, normalized_ratio = 0;
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::string experiment;
  std::vector<ReportRow> rows;
  std::vector<std::pair<std::string, double>> summary;  // emitted in order
  bool pass = true;
  std::vector<std::string> notes;

  void put(const std::string& k, double v) { summary.emplace_back(k, v); }
  double get(const std::string& k) const {
    for (const auto& [kk, vv] : summary)
      if (kk == k) return vv;
    throw config_error("summary key missing: " + k);
  }
};

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return v;
}

}  // namespace hspec
