#pragma once

#include "hspec/exponents.hpp"
#include "hspec/harness.hpp"
#include "hspec/modekernel.hpp"
#include "hspec/parallel.hpp"
#include "hspec/timefamily.hpp"

namespace hspec {

// -----------------------------------------------------------------------------
// Multiplier class membership: the size, alternating-sum, variation, and
// derivative-decay conditions on a scalar symbol G.
// -----------------------------------------------------------------------------

// Symbol with optional analytic derivatives; without them, high-order central
// differences are used for the decay condition.
struct SymbolWithDerivatives {
  ScalarSymbol g;
  std::function<cplx(int, double)> deriv;  // l-th derivative at t; may be null

  cplx d(int l, double t) const {
    if (l == 0) return g(t);
    if (deriv) return deriv(l, t);
    // 4th-order central differences, iterated per order.
    const double h = 1e-2 * std::max(1.0, std::fabs(t)) / (1 << l);
    auto dl = [this](int ll, double tt, double hh, auto&& self) -> cplx {
      if (ll == 0) return g(tt);
      return (self(ll - 1, tt - 2 * hh, hh, self) - 8.0 * self(ll - 1, tt - hh, hh, self) +
              8.0 * self(ll - 1, tt + hh, hh, self) - self(ll - 1, tt + 2 * hh, hh, self)) /
             (12.0 * hh);
    };
    return dl(l, t, h, dl);
  }
};

// The resolvent-type symbol 1/(i tau + t + mu) with its closed-form derivatives.
inline SymbolWithDerivatives symbol_g_mu_tau(double mu, double tau) {
  SymbolWithDerivatives s;
  s.g = [mu, tau](double t) { return 1.0 / cplx(t + mu, tau); };
  s.deriv = [mu, tau](int l, double t) {
    double fact = 1.0;
    for (int j = 2; j <= l; ++j) fact *= j;
    return (l % 2 ? -1.0 : 1.0) * fact * std::pow(cplx(t + mu, tau), -(l + 1));
  };
  return s;
}

struct MultiplierClassReport {
  double size_bound = 0;        // sup |G(n)|
  double pair_sum = 0;          // sum |G(k) + G(-k)|
  double variation_sum = 0;     // sum |k G(k) - (k+1) G(k+1)|
  double derivative_bound = 0;  // sup (1+|t|)^{l+1} |G^(l)(t)|
  bool size_ok = false, pair_ok = false, variation_ok = false, derivative_ok = false;

  bool all_ok() const { return size_ok && pair_ok && variation_ok && derivative_ok; }
};

struct MultiplierClassConfig {
  double bound = 100.0;  // the supplied class constant
  double t0 = 1.0;
  int d = 3;
  int n_range = 10000;   // integer range for the size condition
  int sum_terms = 200000;
  double t_max = 1e4;
};

inline MultiplierClassReport check_multiplier_class(const SymbolWithDerivatives& G,
                                                    const MultiplierClassConfig& cfg) {
  MultiplierClassReport rep;

  double sup = 0;
  for (int n = -cfg.n_range; n <= cfg.n_range; ++n) {
    const double v = std::abs(G.g(static_cast<double>(n)));
    if (!std::isfinite(v)) {
      sup = INFINITY;
      break;
    }
    sup = std::max(sup, v);
  }
  rep.size_bound = sup;
  rep.size_ok = std::isfinite(sup) && sup <= cfg.bound;

  // Partial sums with growth monitoring: a series whose last quarter still
  // contributes more than 1% of the total is flagged divergent.
  auto monitored_sum = [&cfg](const std::function<double(int)>& term, double& total) {
    double sum = 0, tail = 0;
    for (int k = 1; k <= cfg.sum_terms; ++k) {
      const double v = term(k);
      if (!std::isfinite(v)) {
        total = INFINITY;
        return false;
      }
      sum += v;
      if (k > 3 * cfg.sum_terms / 4) tail += v;
    }
    total = sum;
    return std::isfinite(sum) && tail <= 0.01 * sum + 1e-12;
  };
  const bool pair_conv = monitored_sum(
      [&G](int k) { return std::abs(G.g(static_cast<double>(k)) + G.g(static_cast<double>(-k))); },
      rep.pair_sum);
  rep.pair_ok = pair_conv && rep.pair_sum <= cfg.bound;
  const bool var_conv = monitored_sum(
      [&G](int k) {
        return std::abs(static_cast<double>(k) * G.g(static_cast<double>(k)) -
                        static_cast<double>(k + 1) * G.g(static_cast<double>(k + 1)));
      },
      rep.variation_sum);
  rep.variation_ok = var_conv && rep.variation_sum <= cfg.bound;

  const int l_max = (cfg.d + 2) / 2;
  double dsup = 0;
  for (int l = 0; l <= l_max; ++l) {
    for (double t : log_spaced(cfg.t0 * 1.0001, cfg.t_max, 60)) {
      for (double sgn : {1.0, -1.0}) {
        const double v = std::abs(G.d(l, sgn * t)) * std::pow(1.0 + t, l + 1);
        if (!std::isfinite(v)) {
          dsup = INFINITY;
          break;
        }
        dsup = std::max(dsup, v);
      }
    }
  }
  rep.derivative_bound = dsup;
  rep.derivative_ok = std::isfinite(dsup) && dsup <= cfg.bound;
  return rep;
}

struct MultiplierClassSweepConfig {
  MultiplierClassConfig check;
  double mu = 0.4, tau = 0.3;
  std::uint64_t seed = 1;
};

inline SweepResult experiment_multiplier_class(const MultiplierClassSweepConfig& cfg) {
  SweepResult res;
  res.experiment = "multiplier-class";
  const auto put_report = [&res, &cfg](const std::string& tag, const MultiplierClassReport& rep) {
    res.put(tag + "_size", rep.size_bound);
    res.put(tag + "_pair_sum", rep.pair_sum);
    res.put(tag + "_variation", rep.variation_sum);
    res.put(tag + "_derivative", rep.derivative_bound);
    res.put(tag + "_pass", rep.all_ok() ? 1.0 : 0.0);
    res.rows.push_back(ReportRow{res.experiment, cfg.check.d, 0, 0, 0, 0, 0, 0, tag, 0.0,
                                 "class-check", 0, 0, rep.all_ok() ? 1.0 : 0.0,
                                 rep.all_ok() ? 1.0 : 0.0, cfg.seed});
  };

  const auto good = check_multiplier_class(symbol_g_mu_tau(cfg.mu, cfg.tau), cfg.check);
  put_report("g_mu_tau", good);

  SymbolWithDerivatives constant;
  constant.g = [](double) { return cplx(1.0, 0.0); };
  constant.deriv = [](int, double) { return cplx(0.0, 0.0); };
  const auto flat = check_multiplier_class(constant, cfg.check);
  put_report("constant", flat);

  const auto pole = check_multiplier_class(symbol_g_mu_tau(0.0, 0.0), cfg.check);
  put_report("g_0_0", pole);

  res.pass = good.all_ok() && !flat.pair_ok && !pole.size_ok;
  res.put("pass", res.pass ? 1.0 : 0.0);
  return res;
}

// -----------------------------------------------------------------------------
// Uniform boundedness of the resonant trigonometric sums zeta_n, with the
// partial-sum sweep of sigma_k and a non-monotone-cutoff negative control.
// -----------------------------------------------------------------------------

struct ZetaSweepConfig {
  double mu = 0.4, tau = 0.3;
  std::vector<int> n_set = {16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  int t_count = 10000;
  int sigma_k_max = 4096;
  int sigma_t_count = 31416;
  double slope_max = 0.02;
  std::uint64_t seed = 1;
  int threads = 1;
};

inline SweepResult experiment_zeta_sweep(const ZetaSweepConfig& cfg) {
  SweepResult res;
  res.experiment = "zeta-sweep";
  const auto G = symbol_g_mu_tau(cfg.mu, cfg.tau).g;
  CutoffPhi phi;
  NonMonotonePhi phi_bad;

  std::vector<double> sups(cfg.n_set.size()), sups_bad(cfg.n_set.size());
  parallel_for_index(cfg.n_set.size(), cfg.threads, [&](std::size_t i) {
    sups[i] = zeta_sup_scan(G, cfg.n_set[i], phi, cfg.t_count);
    sups_bad[i] = zeta_sup_scan(G, cfg.n_set[i], phi_bad, cfg.t_count);
  });
  std::vector<double> xs, ys, ys_bad;
  for (std::size_t i = 0; i < cfg.n_set.size(); ++i) {
    const double l2n = std::log2(static_cast<double>(cfg.n_set[i]));
    res.rows.push_back(ReportRow{res.experiment, 0, 0, 0, 0, 0, 0, 0, "n",
                                 static_cast<double>(cfg.n_set[i]), "sup-zeta", 1.0, sups[i],
                                 sups[i], sups[i], cfg.seed});
    res.rows.push_back(ReportRow{res.experiment, 0, 0, 0, 0, 0, 0, 0, "n_control",
                                 static_cast<double>(cfg.n_set[i]), "sup-zeta-nonmonotone", 1.0,
                                 sups_bad[i], sups_bad[i], sups_bad[i], cfg.seed});
    xs.push_back(l2n);
    ys.push_back(sups[i]);
    ys_bad.push_back(sups_bad[i]);
  }
  const double slope = fit_slope(xs, ys);
  const double slope_bad = fit_slope(xs, ys_bad);
  const double sigma_sup = sigma_sup_scan(cfg.sigma_k_max, cfg.sigma_t_count);
  res.put("zeta_slope", slope);
  res.put("zeta_sup_max", *std::max_element(ys.begin(), ys.end()));
  res.put("control_slope", slope_bad);  // recorded, never gated
  res.put("sigma_sup", sigma_sup);
  res.put("slope_max", cfg.slope_max);
  res.pass = (slope <= cfg.slope_max) && (sigma_sup >= 1.85 && sigma_sup <= 1.86);
  res.put("pass", res.pass ? 1.0 : 0.0);
  return res;
}

// -----------------------------------------------------------------------------
// Weighted heat-operator ratio: LHS/RHS of the weighted inequality on a
// translated space-time Gaussian bump, swept over the weight parameter.
// -----------------------------------------------------------------------------

struct CarlemanRatioConfig {
  int d = 3;
  double p = 4.0 / 3.0, q = 3.0, r = 2.0, s = 2.0, a = 2.0, b = 2.0;
  std::vector<double> alpha_set = {0.7, 1.7, 2.7};
  std::vector<double> trace_gaps = {0.2, 0.1, 0.05, 0.025};  // dist(beta, N0) trace
  // bump geometry: amplitude * exp(-|x-x0|^2/(2 w^2)) exp(-(t-t0)^2/(2 wt^2))
  double amplitude = 1.0;
  double x0 = 1.2, t0 = 1.0, w = 0.45, wt = 0.18;
  double box_extent = 6.0;
  int box_points = 48;
  int time_points = 61;
  double threshold = 10.0;
  std::uint64_t seed = 1;
  int threads = 1;
};

namespace detail {

struct CarlemanSides {
  double lhs = 0, rhs = 0;
};

inline CarlemanSides carleman_sides(const CarlemanRatioConfig& cfg, double alpha) {
  const GridPtr box = Grid::uniform_box(cfg.d, cfg.box_extent, cfg.box_points);
  const TimeGrid tg(cfg.t0 - 4.0 * cfg.wt, cfg.t0 + 4.0 * cfg.wt, cfg.time_points);
  const CarlemanWeight wl = carleman_weight(WeightSide::lhs, alpha, cfg.d, cfg.p, cfg.q, cfg.r, cfg.s);
  const CarlemanWeight wr = carleman_weight(WeightSide::rhs, alpha, cfg.d, cfg.p, cfg.q, cfg.r, cfg.s);

  const double w2 = cfg.w * cfg.w, wt2 = cfg.wt * cfg.wt;
  auto bump = [&](const double* x, double t) {
    double e = 0.0;
    for (int i = 0; i < cfg.d; ++i) {
      const double y = x[i] - (i == 0 ? cfg.x0 : 0.0);
      e += y * y;
    }
    const double dt = t - cfg.t0;
    return cfg.amplitude * std::exp(-0.5 * e / w2 - 0.5 * dt * dt / wt2);
  };
  // (Laplacian + d_t) of the bump, in closed form.
  auto heat_of_bump = [&](const double* x, double t) {
    double e = 0.0;
    for (int i = 0; i < cfg.d; ++i) {
      const double y = x[i] - (i == 0 ? cfg.x0 : 0.0);
      e += y * y;
    }
    const double dt = t - cfg.t0;
    const double g = cfg.amplitude * std::exp(-0.5 * e / w2 - 0.5 * dt * dt / wt2);
    return g * ((e / w2 - cfg.d) / w2 - dt / wt2);
  };

  std::vector<double> lhs_norms(static_cast<std::size_t>(tg.count));
  std::vector<double> rhs_norms(static_cast<std::size_t>(tg.count));
  for (int it = 0; it < tg.count; ++it) {
    const double t = tg.node(it);
    GridFunction fl = sample(box, [&](const double* x) { return wl(x, cfg.d, t) * bump(x, t); });
    GridFunction fr = sample(box, [&](const double* x) { return wr(x, cfg.d, t) * heat_of_bump(x, t); });
    lhs_norms[static_cast<std::size_t>(it)] = lorentz_norm(fl, LorentzExponent(cfg.q, cfg.b));
    rhs_norms[static_cast<std::size_t>(it)] = lorentz_norm(fr, LorentzExponent(cfg.p, cfg.a));
  }
  return {mixed_norm_from_samples(lhs_norms, tg, cfg.s), mixed_norm_from_samples(rhs_norms, tg, cfg.r)};
}

}  // namespace detail

inline SweepResult experiment_carleman_ratio(const CarlemanRatioConfig& cfg) {
  SweepResult res;
  res.experiment = "carleman-ratio";
  for (double alpha : cfg.alpha_set) {
    CarlemanParams cp{alpha, cfg.p, cfg.q, cfg.r, cfg.s, cfg.a, cfg.b, cfg.d};
    const auto rep = carleman_admissible(cp, cfg.d);
    if (!rep.ok) {
      std::string msg = "experiment_carleman_ratio: inadmissible parameters at alpha=" +
                        std::to_string(alpha);
      for (const auto& v : rep.violations) msg += "; " + v;
      throw config_error(msg);
    }
  }

  std::vector<double> ratios(cfg.alpha_set.size());
  std::vector<double> betas(cfg.alpha_set.size());
  parallel_for_index(cfg.alpha_set.size(), cfg.threads, [&](std::size_t i) {
    const auto sides = detail::carleman_sides(cfg, cfg.alpha_set[i]);
    ratios[i] = sides.lhs / sides.rhs;
    CarlemanParams cp{cfg.alpha_set[i], cfg.p, cfg.q, cfg.r, cfg.s, cfg.a, cfg.b, cfg.d};
    betas[i] = cp.beta();
  });
  double rmin = 1e300, rmax = 0;
  for (std::size_t i = 0; i < cfg.alpha_set.size(); ++i) {
    res.rows.push_back(ReportRow{res.experiment, cfg.d, cfg.p, cfg.q, cfg.a, cfg.b, cfg.r, cfg.s,
                                 "alpha", cfg.alpha_set[i], "gaussian-bump", 1.0, ratios[i],
                                 ratios[i], ratios[i], cfg.seed});
    rmin = std::min(rmin, ratios[i]);
    rmax = std::max(rmax, ratios[i]);
  }

  // Exploratory trace as beta approaches an integer (never gated): beta =
  // 2 alpha - d/q - 2/s, so alpha placing beta near an integer is explicit.
  const double base = (cfg.d / cfg.q + 2.0 / cfg.s);
  for (double gap : cfg.trace_gaps) {
    const double alpha = 0.5 * (base + 1.0 + gap);  // beta = 1 + gap
    const auto sides = detail::carleman_sides(cfg, alpha);
    res.rows.push_back(ReportRow{res.experiment, cfg.d, cfg.p, cfg.q, cfg.a, cfg.b, cfg.r, cfg.s,
                                 "beta_gap", gap, "gaussian-bump", 1.0, sides.lhs / sides.rhs,
                                 sides.lhs / sides.rhs, sides.lhs / sides.rhs, cfg.seed});
  }

  // Scale invariance: rerun the first weight with the bump amplitude scaled;
  // both sides are 1-homogeneous so the ratio must agree to rounding.
  double scale_drift = 0.0;
  {
    CarlemanRatioConfig scaled = cfg;
    scaled.amplitude = cfg.amplitude * 3.7;
    const auto sides = detail::carleman_sides(scaled, cfg.alpha_set[0]);
    scale_drift = std::fabs(sides.lhs / sides.rhs - ratios[0]) / ratios[0];
  }

  res.put("ratio_max", rmax);
  res.put("ratio_min", rmin);
  res.put("spread", rmax / rmin);
  res.put("scale_drift", scale_drift);
  res.put("threshold", cfg.threshold);
  res.pass = (rmax / rmin <= cfg.threshold) && (scale_drift <= 1e-12);
  res.put("pass", res.pass ? 1.0 : 0.0);
  return res;
}

// -----------------------------------------------------------------------------
// Sobolev-form ratio sweep over beta, with the inverse-pair residual and the
// cross-route agreement between the differential and integral routes.
// -----------------------------------------------------------------------------

struct SobolevRatioConfig {
  int d = 3;
  double inv_p = 5.0 / 6.0, inv_q = 1.0 / 6.0;
  double r = 2.0, s = 2.0, a = 2.0, b = 2.0;
  int beta_j_hi = 20;  // beta in {j + 1/2 : j <= beta_j_hi}
  double gap = 0.5;
  std::uint64_t seed = 23;
  double box_extent = 9.5;
  int box_points = 48;
  double t_half = 3.0;
  int time_points = 2049;
  int frame_stride = 32;
  double threshold = 10.0;
  double residual_max = 1e-6;
  double cross_route_max = 1e-5;
  int threads = 1;
};

namespace detail {

inline SpectralTimeFamily sobolev_probe(const SobolevRatioConfig& cfg, int k_center,
                                        std::uint64_t salt) {
  SpectralTimeFamily h;
  h.tg = TimeGrid(-cfg.t_half, cfg.t_half, cfg.time_points);
  h.dim = cfg.d;
  h.k_max = k_center + 2;
  Rng rng = Rng::derive(cfg.seed, salt);
  for (int k = std::max(0, k_center - 1); k <= k_center + 1; ++k) {
    for (const auto& al : level_indices(k, cfg.d)) {
      if (rng.uniform() > 8.0 / binom(k + cfg.d - 1, cfg.d - 1)) continue;  // sparse selection
      const cplx amp(rng.normal(), rng.normal());
      const double freq = rng.uniform(-1.5, 1.5);
      // compactly supported smooth window, zero outside |t| < 2 t_half / 3
      const double wscale = 2.0 * cfg.t_half / 3.0;
      std::vector<cplx> tr(static_cast<std::size_t>(cfg.time_points));
      for (int i = 0; i < cfg.time_points; ++i) {
        const double t = h.tg.node(i);
        tr[static_cast<std::size_t>(i)] =
            amp * smooth_cap(std::fabs(t) / wscale) * std::polar(1.0, freq * t);
      }
      h.modes.emplace(al, std::move(tr));
    }
  }
  if (h.modes.empty()) {
    std::vector<int> comp(static_cast<std::size_t>(cfg.d), 0);
    comp[0] = k_center;
    const double wscale = 2.0 * cfg.t_half / 3.0;
    std::vector<cplx> tr(static_cast<std::size_t>(cfg.time_points));
    for (int i = 0; i < cfg.time_points; ++i) {
      const double t = h.tg.node(i);
      tr[static_cast<std::size_t>(i)] = smooth_cap(std::fabs(t) / wscale);
    }
    h.modes.emplace(MultiIndex(comp), std::move(tr));
  }
  return h;
}

// Mixed norm of a family on subsampled frames.
inline double family_mixed_norm(const SpectralTimeFamily& f, const GridPtr& box, double time_exp,
                                const LorentzExponent& space, int stride) {
  const int nf = (f.tg.count - 1) / stride + 1;
  TimeGrid sub(f.tg.t0, f.tg.t1, nf);
  std::vector<double> norms(static_cast<std::size_t>(nf));
  for (int i = 0; i < nf; ++i) {
    SpectralCoefficients frame;
    frame.dim = f.dim;
    frame.k_max = f.k_max;
    for (const auto& [a, tr] : f.modes) {
      const cplx v = tr[static_cast<std::size_t>(i * stride)];
      if (v != cplx(0.0, 0.0)) frame.c.emplace(a, v);
    }
    norms[static_cast<std::size_t>(i)] = lorentz_norm(synthesize(frame, box), space);
  }
  return mixed_norm_from_samples(norms, sub, time_exp);
}

}  // namespace detail

inline SweepResult experiment_sobolev_ratio(const SobolevRatioConfig& cfg) {
  SweepResult res;
  res.experiment = "sobolev-ratio";
  const double p = 1.0 / cfg.inv_p, q = 1.0 / cfg.inv_q;
  const GridPtr box = Grid::uniform_box(cfg.d, cfg.box_extent, cfg.box_points);
  const LorentzExponent out_space(q, cfg.b), in_space(p, cfg.a);

  const int nb = cfg.beta_j_hi + 1;
  std::vector<double> ratios(static_cast<std::size_t>(nb));
  std::vector<double> residuals(static_cast<std::size_t>(nb));
  std::vector<double> cross(static_cast<std::size_t>(nb), 0.0);
  parallel_for_index(static_cast<std::size_t>(nb), cfg.threads, [&](std::size_t j) {
    const double beta = static_cast<double>(j) + cfg.gap;
    double best = 0;
    double worst_res = 0, worst_cross = 0;
    for (int pr = 0; pr < 2; ++pr) {
      SpectralTimeFamily h = detail::sobolev_probe(cfg, static_cast<int>(j), 31ULL * j + pr);
      SpectralTimeFamily Lh = heat_hermite_apply(h, beta);
      const double num = detail::family_mixed_norm(h, box, cfg.s, out_space, cfg.frame_stride);
      const double den = detail::family_mixed_norm(Lh, box, cfg.r, in_space, cfg.frame_stride);
      best = std::max(best, num / den);

      // Inverse pair S_beta then L_beta on g = L_beta h.
      SpectralTimeFamily back = heat_hermite_apply(spacetime_inverse(Lh, beta), beta);
      worst_res = std::max(worst_res, back.rel_l2_distance(Lh));

      if (j % 10 == 0 && pr == 0) {
        // Cross-route: the ratio computed from the integral route on g.
        SpectralTimeFamily h2 = spacetime_inverse(Lh, beta);
        const double num2 = detail::family_mixed_norm(h2, box, cfg.s, out_space, cfg.frame_stride);
        const double ratio_a = num / den, ratio_b = num2 / den;
        worst_cross = std::max(worst_cross, std::fabs(ratio_a - ratio_b) / ratio_a);
      }
    }
    ratios[j] = best;
    residuals[j] = worst_res;
    cross[j] = worst_cross;
  });

  double rmin = 1e300, rmax = 0, res_max = 0, cross_max = 0;
  for (int j = 0; j < nb; ++j) {
    const double beta = j + cfg.gap;
    res.rows.push_back(ReportRow{res.experiment, cfg.d, p, q, cfg.a, cfg.b, cfg.r, cfg.s, "beta",
                                 beta, "mode-packet", 1.0, ratios[static_cast<std::size_t>(j)],
                                 ratios[static_cast<std::size_t>(j)],
                                 ratios[static_cast<std::size_t>(j)], cfg.seed});
    rmin = std::min(rmin, ratios[static_cast<std::size_t>(j)]);
    rmax = std::max(rmax, ratios[static_cast<std::size_t>(j)]);
    res_max = std::max(res_max, residuals[static_cast<std::size_t>(j)]);
    cross_max = std::max(cross_max, cross[static_cast<std::size_t>(j)]);
  }
  res.put("ratio_max", rmax);
  res.put("ratio_min", rmin);
  res.put("spread", rmax / rmin);
  res.put("inverse_pair_residual", res_max);
  res.put("cross_route_disagreement", cross_max);
  res.put("threshold", cfg.threshold);
  res.pass = (rmax / rmin <= cfg.threshold) && (res_max < cfg.residual_max) &&
             (cross_max < cfg.cross_route_max);
  res.put("pass", res.pass ? 1.0 : 0.0);
  return res;
}

// -----------------------------------------------------------------------------
// Convolution-kernel decay: the Hormander-form difference quotient fit over
// t in [1, 50] (exponential-sum regime of the mode kernels), the small-t
// growth reported against -gamma, and the dyadic-piece envelope check.
// -----------------------------------------------------------------------------

struct KernelDecayConfig {
  int d = 3;
  double beta = 20.12;  // dist(beta, N0) = 0.12; the paper needs 1 >> c > 0
  double inv_p = 5.0 / 6.0, inv_q = 1.0 / 6.0;
  int k_max = 24;
  std::uint64_t seed = 9;
  double box_extent = 9.5;
  int box_points = 96;
  int probes = 3;
  std::vector<double> t_samples;  // defaults to log-spaced [1, 50]
  std::vector<double> t_small;    // defaults to log-spaced [0.02, 0.4]
  int j_lo = 0, j_hi = 8;
  double slope_lo = -2.3, slope_hi = -1.7;
  double envelope_slack = 1.25;
  int threads = 1;
};

inline SweepResult experiment_kernel_decay(const KernelDecayConfig& cfg) {
  if (std::fabs(cfg.beta - std::round(cfg.beta)) < 1e-8)
    throw gap_error("experiment_kernel_decay: beta on the nonnegative integers");
  SweepResult res;
  res.experiment = "kernel-decay";
  const double p = 1.0 / cfg.inv_p, q = 1.0 / cfg.inv_q;
  const double gamma = 0.5 * cfg.d * (cfg.inv_p - cfg.inv_q);
  const GridPtr box = Grid::uniform_box(cfg.d, cfg.box_extent, cfg.box_points);
  const std::vector<double> ts = cfg.t_samples.empty() ? log_spaced(1.0, 50.0, 9) : cfg.t_samples;
  const std::vector<double> ts_small = cfg.t_small.empty() ? log_spaced(0.02, 0.4, 6) : cfg.t_small;

  std::vector<SpectralCoefficients> probes;
  std::vector<double> innorm;
  for (int pr = 0; pr < cfg.probes; ++pr) {
    Rng rng = Rng::derive(cfg.seed, static_cast<std::uint64_t>(pr));
    SpectralCoefficients sc;
    sc.dim = cfg.d;
    sc.k_max = cfg.k_max;
    for (int k = 0; k <= cfg.k_max; ++k)
      for (const auto& a : level_indices(k, cfg.d)) {
        if (pr == 0) sc.c.emplace(a, cplx(1.0, 0.0));
        else if (pr == 1) sc.c.emplace(a, cplx(rng.normal(), rng.normal()));
        else if (a.dim() < 2 || a[1] + (a.dim() > 2 ? a[2] : 0) <= 2) sc.c.emplace(a, cplx(1.0, 0.0));
      }
    innorm.push_back(lorentz_norm(synthesize(sc, box), LorentzExponent(p, 2.0)));
    probes.push_back(std::move(sc));
  }
  const LorentzExponent out_norm(q, 2.0);

  // (1) Hormander form: ||K(t/2) - K(t)|| / (t/2), log-log slope over the
  // sampled window. The mode kernels are one-sided exponentials, so this is
  // the exponential-sum decay the closed form predicts.
  std::vector<double> lt(ts.size()), lq(ts.size());
  std::vector<ReportRow> hrows(ts.size());
  parallel_for_index(ts.size(), cfg.threads, [&](std::size_t i) {
    const double t = ts[i];
    double best = 0;
    std::string wit;
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
      SpectralCoefficients sc = probes[pi];
      for (auto& [a, v] : sc.c)
        v *= (mode_kernel_eval(cfg.beta - a.degree(), 0.5 * t) -
              mode_kernel_eval(cfg.beta - a.degree(), t));
      const double r = lorentz_norm(synthesize(sc, box), out_norm) / (0.5 * t) / innorm[pi];
      if (r > best) {
        best = r;
        wit = "probe" + std::to_string(pi);
      }
    }
    lt[i] = std::log(t);
    lq[i] = std::log(best);
    hrows[i] = ReportRow{res.experiment, cfg.d, p, q, 2, 2, 0, 0, "t_hormander", t, wit,
                         1.0, best, best, best, cfg.seed};
  });
  for (auto& r : hrows) res.rows.push_back(std::move(r));
  const double slope_h = fit_slope(lt, lq);

  // (2) Small-t growth of ||K(t)|| itself, reported against -gamma. Fixed
  // probes under-witness the eigenspace pileup, so this is diagnostic only.
  std::vector<double> lts(ts_small.size()), lks(ts_small.size());
  std::vector<ReportRow> srows(ts_small.size());
  parallel_for_index(ts_small.size(), cfg.threads, [&](std::size_t i) {
    const double t = ts_small[i];
    double best = 0;
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
      SpectralCoefficients sc = probes[pi];
      for (auto& [a, v] : sc.c) v *= mode_kernel_eval(cfg.beta - a.degree(), t);
      best = std::max(best, lorentz_norm(synthesize(sc, box), out_norm) / innorm[pi]);
    }
    lts[i] = std::log(t);
    lks[i] = std::log(best);
    srows[i] = ReportRow{res.experiment, cfg.d, p, q, 2, 2, 0, 0, "t_small", t, "best-probe",
                         1.0, best, best, best, cfg.seed};
  });
  for (auto& r : srows) res.rows.push_back(std::move(r));
  const double slope_small = fit_slope(lts, lks);

  // (3) Dyadic pieces K_{beta,j}: measured lower bounds against the envelope
  // 2^j (1 + 2^j |t|)^{-2}, uniformly in j relative to the j = 0 calibration.
  const int nj = cfg.j_hi - cfg.j_lo + 1;
  std::vector<double> cj(static_cast<std::size_t>(nj));
  std::vector<std::vector<ReportRow>> jrows(static_cast<std::size_t>(nj));
  parallel_for_index(static_cast<std::size_t>(nj), cfg.threads, [&](std::size_t ij) {
    const int j = cfg.j_lo + static_cast<int>(ij);
    double Cj = 0;
    for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      const double t = std::ldexp(x, -j);
      double best = 0;
      for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        SpectralCoefficients sc = probes[pi];
        for (auto& [a, v] : sc.c) v *= dyadic_kernel_weight(cfg.beta - a.degree(), t, j);
        best = std::max(best, lorentz_norm(synthesize(sc, box), out_norm) / innorm[pi]);
      }
      const double envelope = std::ldexp(1.0, j) / ((1.0 + x) * (1.0 + x));
      Cj = std::max(Cj, best / envelope);
      jrows[ij].push_back(ReportRow{res.experiment, cfg.d, p, q, 2, 2, 0, 0,
                                    "j" + std::to_string(j) + "_x", x, "best-probe", 1.0, best,
                                    best, best / envelope, cfg.seed});
    }
    cj[ij] = Cj;
  });
  for (auto& v : jrows)
    for (auto& r : v) res.rows.push_back(std::move(r));
  double cmax = 0;
  for (double v : cj) cmax = std::max(cmax, v);
  const double c_ref = cj[0];
  const bool envelope_ok = cmax <= cfg.envelope_slack * c_ref;

  res.put("hormander_slope", slope_h);
  res.put("slope_lo", cfg.slope_lo);
  res.put("slope_hi", cfg.slope_hi);
  res.put("smallt_slope", slope_small);
  res.put("gamma_reference", -gamma);
  res.put("envelope_c_ref", c_ref);
  res.put("envelope_c_max", cmax);
  res.put("envelope_ok", envelope_ok ? 1.0 : 0.0);
  res.pass = (slope_h >= cfg.slope_lo && slope_h <= cfg.slope_hi) && envelope_ok;
  res.put("pass", res.pass ? 1.0 : 0.0);
  return res;
}

// -----------------------------------------------------------------------------
// Dyadic time-frequency square function: the two-sided comparison in the
// mixed Lorentz norm, and normability of the square-sum space.
// -----------------------------------------------------------------------------

struct LpSquareConfig {
  int d = 3;
  double r = 4.0, px = 3.0;  // mixed norm L^r_t L^{px, r}_x
  double q_norm = 6.0;       // normability check exponent (q >= 2)
  int trials = 20;
  int norm_trials = 20;
  int k_max = 6;
  std::uint64_t seed = 77;
  double box_extent = 7.0;
  int box_points = 32;
  double t_len = 8.0;
  int time_points = 256;
  int frame_stride = 4;
  double band_lo = 0.125, band_hi = 8.0;  // constants gate
  int threads = 1;
};

inline SweepResult experiment_lp_square(const LpSquareConfig& cfg) {
  SweepResult res;
  res.experiment = "lp-square";
  const GridPtr box = Grid::uniform_box(cfg.d, cfg.box_extent, cfg.box_points);
  const LorentzExponent space(cfg.px, cfg.r);
  const TimeGrid tg(0.0, cfg.t_len, cfg.time_points);
  const auto [j_lo, j_hi] = lp_default_j_range(tg);

  std::vector<double> cs(static_cast<std::size_t>(cfg.trials));
  parallel_for_index(static_cast<std::size_t>(cfg.trials), cfg.threads, [&](std::size_t tr) {
    Rng rng = Rng::derive(cfg.seed, tr);
    // random band-limited spatial modes, each with a few windowed frequencies
    SpectralTimeFamily g;
    g.tg = tg;
    g.dim = cfg.d;
    g.k_max = cfg.k_max;
    const double tc = 0.5 * cfg.t_len;
    for (int k = 0; k <= cfg.k_max; ++k) {
      for (const auto& a : level_indices(k, cfg.d)) {
        if (rng.uniform() > 4.0 / binom(k + cfg.d - 1, cfg.d - 1)) continue;
        std::vector<cplx> trc(static_cast<std::size_t>(cfg.time_points), cplx(0.0, 0.0));
        const int nfreq = rng.uniform_int(1, 3);
        for (int f = 0; f < nfreq; ++f) {
          const double nu = rng.uniform(0.6, 7.0);
          const cplx amp(rng.normal(), rng.normal());
          for (int i = 0; i < cfg.time_points; ++i) {
            const double t = tg.node(i);
            const double win = smooth_cap(std::fabs(t - tc) / (0.45 * cfg.t_len));
            trc[static_cast<std::size_t>(i)] += amp * win * std::polar(1.0, 2.0 * pi * nu * t);
          }
        }
        g.modes.emplace(a, std::move(trc));
      }
    }
    if (g.modes.empty()) {
      cs[tr] = 1.0;
      return;
    }
    auto pieces = lp_time_decompose(g, j_lo, j_hi);

    // ||g|| and the square function in the same mixed norm, on subsampled frames.
    const int nf = (tg.count - 1) / cfg.frame_stride + 1;
    TimeGrid sub(tg.t0, tg.t1, nf);
    std::vector<double> gnorm(static_cast<std::size_t>(nf));
    std::vector<double> sqnorm(static_cast<std::size_t>(nf));
    for (int i = 0; i < nf; ++i) {
      const int it = i * cfg.frame_stride;
      SpectralCoefficients frame;
      frame.dim = cfg.d;
      frame.k_max = cfg.k_max;
      for (const auto& [a, trc] : g.modes) frame.c.emplace(a, trc[static_cast<std::size_t>(it)]);
      gnorm[static_cast<std::size_t>(i)] = lorentz_norm(synthesize(frame, box), space);

      GridFunction sq(box);
      for (const auto& piece : pieces) {
        SpectralCoefficients pf;
        pf.dim = cfg.d;
        pf.k_max = cfg.k_max;
        for (const auto& [a, trc] : piece.modes) pf.c.emplace(a, trc[static_cast<std::size_t>(it)]);
        GridFunction pg = synthesize(pf, box);
        for (std::size_t n = 0; n < sq.size(); ++n)
          sq[n] += cplx(std::norm(pg[n]), 0.0);
      }
      for (std::size_t n = 0; n < sq.size(); ++n) sq[n] = std::sqrt(sq[n].real());
      sqnorm[static_cast<std::size_t>(i)] = lorentz_norm(sq, space);
    }
    const double ng = mixed_norm_from_samples(gnorm, sub, cfg.r);
    const double ns = mixed_norm_from_samples(sqnorm, sub, cfg.r);
    cs[tr] = ns / ng;
  });

  double cmin = 1e300, cmax = 0;
  for (std::size_t tr = 0; tr < cs.size(); ++tr) {
    res.rows.push_back(ReportRow{res.experiment, cfg.d, cfg.px, cfg.px, cfg.r, cfg.r, cfg.r,
                                 cfg.r, "trial", static_cast<double>(tr), "random-g", 1.0, cs[tr],
                                 cs[tr], cs[tr], cfg.seed});
    cmin = std::min(cmin, cs[tr]);
    cmax = std::max(cmax, cs[tr]);
  }

  // Normability of the square-sum space: ||(sum |h_j|^2)^{1/2}||_{q,2}
  // against (sum ||h_j||_{q,2}^2)^{1/2} on random spatial fields.
  double norm_ratio_max = 0;
  for (int tr = 0; tr < cfg.norm_trials; ++tr) {
    Rng rng = Rng::derive(cfg.seed ^ 0xabcdULL, static_cast<std::uint64_t>(tr));
    const int nh = 10;
    GridFunction sq(box);
    double sum_sq = 0;
    for (int jj = 0; jj < nh; ++jj) {
      SpectralCoefficients sc;
      sc.dim = cfg.d;
      sc.k_max = cfg.k_max;
      for (int k = 0; k <= cfg.k_max; ++k)
        for (const auto& a : level_indices(k, cfg.d))
          sc.c.emplace(a, cplx(rng.normal(), rng.normal()));
      GridFunction hg = synthesize(sc, box);
      const double nrm = lorentz_norm(hg, LorentzExponent(cfg.q_norm, 2.0));
      sum_sq += nrm * nrm;
      for (std::size_t n = 0; n < sq.size(); ++n) sq[n] += cplx(std::norm(hg[n]), 0.0);
    }
    for (std::size_t n = 0; n < sq.size(); ++n) sq[n] = std::sqrt(sq[n].real());
    const double lhs = lorentz_norm(sq, LorentzExponent(cfg.q_norm, 2.0));
    norm_ratio_max = std::max(norm_ratio_max, lhs / std::sqrt(sum_sq));
  }

  res.put("square_ratio_min", cmin);
  res.put("square_ratio_max", cmax);
  res.put("normability_ratio_max", norm_ratio_max);
  res.put("band_lo", cfg.band_lo);
  res.put("band_hi", cfg.band_hi);
  res.pass = (cmin >= cfg.band_lo && cmax <= cfg.band_hi && norm_ratio_max <= cfg.band_hi);
  res.put("pass", res.pass ? 1.0 : 0.0);
  return res;
}

}  // namespace hspec
