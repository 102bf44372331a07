#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hspec/config.hpp"
#include "hspec/experiments_inequalities.hpp"
#include "hspec/experiments_spectral.hpp"

namespace hspec {

struct ExperimentInfo {
  std::string name;
  std::string describe;  // anchors, parameters, defaults, thresholds
  std::function<SweepResult(const ExperimentConfig&, int threads)> run;
};

namespace detail {

inline std::vector<double> parse_list(const ExperimentConfig& cfg, const std::string& key,
                                      const std::vector<double>& dflt) {
  if (!cfg.has(key)) return dflt;
  std::vector<double> out;
  std::istringstream in(cfg.get_str(key, ""));
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const std::string t = trim(tok);
    if (t.empty()) continue;
    try {
      out.push_back(std::stod(t));
    } catch (const std::exception&) {
      throw config_error("config: bad list entry for " + key + ": " + t);
    }
  }
  if (out.empty()) throw config_error("config: empty list for " + key);
  return out;
}

}  // namespace detail

inline const std::vector<ExperimentInfo>& experiment_registry() {
  static const std::vector<ExperimentInfo> reg = {
      {"projection-sweep",
       "Uniformity of the eigenspace projections Pi_k, display (2.4), and the restricted weak "
       "type variant at the removed vertices. Sweeps k over [sweep.k_lo, sweep.k_hi] at (p, q) = "
       "(norms.p, norms.q), >= sweep.probes_per_k probes per k, plus the restricted-weak "
       "variant at the removed vertex with indicator probes measured by |E|^{1/p}. "
       "Defaults: d = 3, (p, q) = (2, 6), k in [1, 40], 30 probes. Threshold: max/min of "
       "best ratios <= thresholds.spread (default 10).",
       [](const ExperimentConfig& c, int threads) {
         ProjectionSweepConfig pc;
         pc.d = static_cast<int>(c.get_int("experiment.d", pc.d));
         pc.p = c.get_num("norms.p", pc.p);
         pc.q = c.get_num("norms.q", pc.q);
         pc.k_lo = static_cast<int>(c.get_int("sweep.k_lo", pc.k_lo));
         pc.k_hi = static_cast<int>(c.get_int("sweep.k_hi", pc.k_hi));
         pc.probes_per_k = static_cast<int>(c.get_int("sweep.probes_per_k", pc.probes_per_k));
         pc.seed = c.seed;
         pc.box_extent = c.get_num("grid.box_extent", pc.box_extent);
         pc.box_points = static_cast<int>(c.get_int("grid.box_points", pc.box_points));
         pc.gh_points = static_cast<int>(c.get_int("grid.gh_points", pc.gh_points));
         pc.threshold = c.get_num("thresholds.spread", pc.threshold);
         pc.run_lebesgue = c.get_int("sweep.run_lebesgue", 1) != 0;
         pc.run_restricted_weak = c.get_int("sweep.run_restricted_weak", 1) != 0;
         pc.threads = threads;
         if (pc.k_lo < 0 || pc.k_hi < pc.k_lo) throw config_error("projection-sweep: bad k range");
         return experiment_projection_sweep(pc);
       }},
      {"resolvent-sweep",
       "Uniform resolvent bounds on the critical segment, displays (1.8), (3.1), (3.9): "
       "ratios of (H - z)^{-m} lower bounds normalized by (1 + |Im z|)^{gamma - m}, over "
       "mid-gap real z = 2j + d + 1 (j <= sweep.j_hi) and complex offsets 2i*tau. Defaults: "
       "d = 3, (1/p, 1/q) the critical-segment midpoint, m = 1, tau in {5, 25}, gap 1/2. "
       "Threshold: normalized max/min <= thresholds.spread.",
       [](const ExperimentConfig& c, int threads) {
         ResolventSweepConfig rc;
         rc.d = static_cast<int>(c.get_int("experiment.d", rc.d));
         rc.inv_p = c.get_num("norms.inv_p", rc.inv_p);
         rc.inv_q = c.get_num("norms.inv_q", rc.inv_q);
         rc.j_hi = static_cast<int>(c.get_int("sweep.j_hi", rc.j_hi));
         rc.tau_set = detail::parse_list(c, "sweep.tau_set", rc.tau_set);
         rc.m = static_cast<int>(c.get_int("sweep.m", rc.m));
         rc.seed = c.seed;
         rc.gap_constant = c.get_num("sweep.gap_constant", rc.gap_constant);
         rc.box_extent = c.get_num("grid.box_extent", rc.box_extent);
         rc.box_points = static_cast<int>(c.get_int("grid.box_points", rc.box_points));
         rc.threshold = c.get_num("thresholds.spread", rc.threshold);
         rc.threads = threads;
         if (rc.j_hi < 0) throw config_error("resolvent-sweep: bad j range");
         return experiment_resolvent_sweep(rc);
       }},
      {"zeta-sweep",
       "Uniform boundedness of the resonant trigonometric sums, display (3.7): sup_t "
       "|zeta_n(t)| over a t-grid of step <= pi/1e4 for n in sweep.n_set, regression slope "
       "against log2 n gated at thresholds.slope_max (default 0.02); the sigma_k partial-sum "
       "sweep must land in [1.85, 1.86]; a non-monotone-cutoff control is "
       "recorded, never gated. Symbol: G_{mu,tau} with symbol.mu, symbol.tau (0.4, 0.3).",
       [](const ExperimentConfig& c, int threads) {
         ZetaSweepConfig zc;
         zc.mu = c.get_num("symbol.mu", zc.mu);
         zc.tau = c.get_num("symbol.tau", zc.tau);
         if (c.has("sweep.n_set")) {
           zc.n_set.clear();
           for (double v : detail::parse_list(c, "sweep.n_set", {}))
             zc.n_set.push_back(static_cast<int>(v));
         }
         zc.t_count = static_cast<int>(c.get_int("sweep.t_count", zc.t_count));
         zc.sigma_k_max = static_cast<int>(c.get_int("sweep.sigma_k_max", zc.sigma_k_max));
         zc.sigma_t_count = static_cast<int>(c.get_int("sweep.sigma_t_count", zc.sigma_t_count));
         zc.slope_max = c.get_num("thresholds.slope_max", zc.slope_max);
         zc.seed = c.seed;
         zc.threads = threads;
         if (zc.n_set.empty() || zc.t_count < 10) throw config_error("zeta-sweep: bad ranges");
         return experiment_zeta_sweep(zc);
       }},
      {"multiplier-class",
       "Membership in the multiplier class of displays (3.2)-(3.5): size on the integers, "
       "summability of G(k) + G(-k), the variation sum, and derivative decay "
       "(1 + |t|)^{-l-1} for 0 <= l <= (d+2)/2 beyond symbol.t0. Runs G_{mu,tau} "
       "(must pass), the constant symbol (must fail (3.3)), and G_{0,0} (must fail (3.2)).",
       [](const ExperimentConfig& c, int threads) {
         (void)threads;
         MultiplierClassSweepConfig mc;
         mc.mu = c.get_num("symbol.mu", mc.mu);
         mc.tau = c.get_num("symbol.tau", mc.tau);
         mc.check.bound = c.get_num("thresholds.class_bound", mc.check.bound);
         mc.check.t0 = c.get_num("symbol.t0", mc.check.t0);
         mc.check.d = static_cast<int>(c.get_int("experiment.d", mc.check.d));
         mc.check.n_range = static_cast<int>(c.get_int("sweep.n_range", mc.check.n_range));
         mc.check.sum_terms = static_cast<int>(c.get_int("sweep.sum_terms", mc.check.sum_terms));
         mc.seed = c.seed;
         return experiment_multiplier_class(mc);
       }},
      {"carleman-ratio",
       "Weighted heat-operator inequality, display (1.4): LHS/RHS mixed-norm ratio on a "
       "translated space-time Gaussian bump, swept over the weight parameter alpha "
       "(admissibility pre-checked by the exponent-region predicate; beta = 2 alpha - d/q - "
       "2/s off the nonnegative integers). Defaults: d = 3, p = 4/3, q = 3, r = s = 2, "
       "a = b = 2, alpha in {0.7, 1.7, 2.7}. Threshold: max/min <= thresholds.spread; a "
       "beta-proximity trace is recorded, never gated.",
       [](const ExperimentConfig& c, int threads) {
         CarlemanRatioConfig cc;
         cc.d = static_cast<int>(c.get_int("experiment.d", cc.d));
         cc.p = c.get_num("norms.p", cc.p);
         cc.q = c.get_num("norms.q", cc.q);
         cc.r = c.get_num("norms.r", cc.r);
         cc.s = c.get_num("norms.s", cc.s);
         cc.a = c.get_num("norms.a", cc.a);
         cc.b = c.get_num("norms.b", cc.b);
         cc.alpha_set = detail::parse_list(c, "sweep.alpha_set", cc.alpha_set);
         cc.x0 = c.get_num("bump.x0", cc.x0);
         cc.t0 = c.get_num("bump.t0", cc.t0);
         cc.w = c.get_num("bump.w", cc.w);
         cc.wt = c.get_num("bump.wt", cc.wt);
         cc.box_extent = c.get_num("grid.box_extent", cc.box_extent);
         cc.box_points = static_cast<int>(c.get_int("grid.box_points", cc.box_points));
         cc.time_points = static_cast<int>(c.get_int("grid.time_points", cc.time_points));
         cc.threshold = c.get_num("thresholds.spread", cc.threshold);
         cc.seed = c.seed;
         cc.threads = threads;
         return experiment_carleman_ratio(cc);
       }},
      {"sobolev-ratio",
       "Sobolev form of the weighted inequality, displays (4.2)/(4.3): mixed-norm ratio "
       "||h|| / ||L_beta h|| on band-limited time-windowed packets, swept over beta = j + "
       "1/2, j <= sweep.beta_j_hi, plus the inverse-pair residual (S_beta then L_beta, "
       "gated at thresholds.residual) and the cross-route agreement. Defaults: d = 3, "
       "(1/p, 1/q) the critical-segment midpoint, r = s = 2, a = b = 2.",
       [](const ExperimentConfig& c, int threads) {
         SobolevRatioConfig sc;
         sc.d = static_cast<int>(c.get_int("experiment.d", sc.d));
         sc.inv_p = c.get_num("norms.inv_p", sc.inv_p);
         sc.inv_q = c.get_num("norms.inv_q", sc.inv_q);
         sc.beta_j_hi = static_cast<int>(c.get_int("sweep.beta_j_hi", sc.beta_j_hi));
         sc.gap = c.get_num("sweep.gap_constant", sc.gap);
         sc.box_extent = c.get_num("grid.box_extent", sc.box_extent);
         sc.box_points = static_cast<int>(c.get_int("grid.box_points", sc.box_points));
         sc.time_points = static_cast<int>(c.get_int("grid.time_points", sc.time_points));
         sc.frame_stride = static_cast<int>(c.get_int("grid.frame_stride", sc.frame_stride));
         sc.threshold = c.get_num("thresholds.spread", sc.threshold);
         sc.residual_max = c.get_num("thresholds.residual", sc.residual_max);
         sc.cross_route_max = c.get_num("thresholds.cross_route", sc.cross_route_max);
         sc.seed = c.seed;
         sc.threads = threads;
         return experiment_sobolev_ratio(sc);
       }},
      {"kernel-decay",
       "Decay of the operator-valued convolution kernel K_beta behind the Hormander condition "
       "(4.4), the bound min{|t|^{-gamma}, |t|^{-2}}: the Hormander-form difference quotient ||K(t/2) - K(t)|| / "
       "(t/2) fitted in log-log over t in [1, 50] (the mode kernels' exponential-sum regime), "
       "gated inside [thresholds.slope_lo, thresholds.slope_hi] = [-2.3, -1.7]; small-t "
       "growth reported against -gamma; the dyadic pieces K_{beta,j} checked against the "
       "envelope 2^j (1 + 2^j |t|)^{-2} for j in [0, 8], uniformly relative to j = 0.",
       [](const ExperimentConfig& c, int threads) {
         KernelDecayConfig kc;
         kc.d = static_cast<int>(c.get_int("experiment.d", kc.d));
         kc.beta = c.get_num("sweep.beta", kc.beta);
         kc.inv_p = c.get_num("norms.inv_p", kc.inv_p);
         kc.inv_q = c.get_num("norms.inv_q", kc.inv_q);
         kc.k_max = static_cast<int>(c.get_int("grid.k_max", kc.k_max));
         kc.box_extent = c.get_num("grid.box_extent", kc.box_extent);
         kc.box_points = static_cast<int>(c.get_int("grid.box_points", kc.box_points));
         kc.probes = static_cast<int>(c.get_int("sweep.probes", kc.probes));
         kc.j_lo = static_cast<int>(c.get_int("sweep.j_lo", kc.j_lo));
         kc.j_hi = static_cast<int>(c.get_int("sweep.j_hi", kc.j_hi));
         kc.slope_lo = c.get_num("thresholds.slope_lo", kc.slope_lo);
         kc.slope_hi = c.get_num("thresholds.slope_hi", kc.slope_hi);
         kc.envelope_slack = c.get_num("thresholds.envelope_slack", kc.envelope_slack);
         kc.seed = c.seed;
         kc.threads = threads;
         return experiment_kernel_decay(kc);
       }},
      {"lp-square",
       "Dyadic time-frequency square function, displays (4.5) and (4.7): the two-sided "
       "comparison of ||g|| and the square-function norm in the mixed Lorentz norm over "
       "sweep.trials random signals (both empirical constants gated inside "
       "[thresholds.band_lo, thresholds.band_hi] = [1/8, 8]), plus normability of the "
       "square-sum space at exponent norms.q_norm >= 2.",
       [](const ExperimentConfig& c, int threads) {
         LpSquareConfig lc;
         lc.d = static_cast<int>(c.get_int("experiment.d", lc.d));
         lc.r = c.get_num("norms.r", lc.r);
         lc.px = c.get_num("norms.p", lc.px);
         lc.q_norm = c.get_num("norms.q_norm", lc.q_norm);
         lc.trials = static_cast<int>(c.get_int("sweep.trials", lc.trials));
         lc.norm_trials = static_cast<int>(c.get_int("sweep.norm_trials", lc.norm_trials));
         lc.k_max = static_cast<int>(c.get_int("grid.k_max", lc.k_max));
         lc.box_extent = c.get_num("grid.box_extent", lc.box_extent);
         lc.box_points = static_cast<int>(c.get_int("grid.box_points", lc.box_points));
         lc.time_points = static_cast<int>(c.get_int("grid.time_points", lc.time_points));
         lc.band_lo = c.get_num("thresholds.band_lo", lc.band_lo);
         lc.band_hi = c.get_num("thresholds.band_hi", lc.band_hi);
         lc.seed = c.seed;
         lc.threads = threads;
         return experiment_lp_square(lc);
       }},
      {"smoothing-boundary",
       "Sharp smoothing window of H^{-s} (the if-and-only-if region -2s/d < 1/p - 1/q <= "
       "2s/d): dilation-family ratios on f_lambda(x) = f(lambda x); bounded on the boundary "
       "(|slope| <= thresholds.flat_tol), growing beyond it (slope >= thresholds.growth_min).",
       [](const ExperimentConfig& c, int threads) {
         (void)threads;
         SmoothingBoundaryConfig sb;
         sb.base.d = static_cast<int>(c.get_int("experiment.d", sb.base.d));
         sb.base.s = c.get_num("sweep.s", sb.base.s);
         sb.base.lambdas = detail::parse_list(c, "sweep.lambdas", sb.base.lambdas);
         sb.base.k_max = static_cast<int>(c.get_int("grid.k_max", sb.base.k_max));
         sb.base.box_extent = c.get_num("grid.box_extent", sb.base.box_extent);
         sb.base.box_points = static_cast<int>(c.get_int("grid.box_points", sb.base.box_points));
         sb.base.seed = c.seed;
         sb.inside_inv_p = c.get_num("norms.inside_inv_p", sb.inside_inv_p);
         sb.inside_inv_q = c.get_num("norms.inside_inv_q", sb.inside_inv_q);
         sb.outside_inv_p = c.get_num("norms.outside_inv_p", sb.outside_inv_p);
         sb.outside_inv_q = c.get_num("norms.outside_inv_q", sb.outside_inv_q);
         sb.flat_tol = c.get_num("thresholds.flat_tol", sb.flat_tol);
         sb.growth_min = c.get_num("thresholds.growth_min", sb.growth_min);
         return experiment_smoothing_boundary(sb);
       }},
      {"critical-necessity",
       "Necessity of the critical relation 1/p - 1/q = 2/d behind display (1.6): ratios ||H^{-1} f_lambda||_q / "
       "||f_lambda||_p grow with the dilation beyond 1/p - 1/q = 2/d (slope >= "
       "thresholds.growth_min) and stay flat on the line (|slope| <= thresholds.flat_tol).",
       [](const ExperimentConfig& c, int threads) {
         (void)threads;
         CriticalNecessityConfig cn;
         cn.base.d = static_cast<int>(c.get_int("experiment.d", cn.base.d));
         cn.base.lambdas = detail::parse_list(c, "sweep.lambdas", cn.base.lambdas);
         cn.base.k_max = static_cast<int>(c.get_int("grid.k_max", cn.base.k_max));
         cn.base.box_extent = c.get_num("grid.box_extent", cn.base.box_extent);
         cn.base.box_points = static_cast<int>(c.get_int("grid.box_points", cn.base.box_points));
         cn.base.seed = c.seed;
         cn.beyond_inv_p = c.get_num("norms.beyond_inv_p", cn.beyond_inv_p);
         cn.beyond_inv_q = c.get_num("norms.beyond_inv_q", cn.beyond_inv_q);
         cn.critical_inv_p = c.get_num("norms.critical_inv_p", cn.critical_inv_p);
         cn.critical_inv_q = c.get_num("norms.critical_inv_q", cn.critical_inv_q);
         cn.flat_tol = c.get_num("thresholds.flat_tol", cn.flat_tol);
         cn.growth_min = c.get_num("thresholds.growth_min", cn.growth_min);
         return experiment_critical_necessity(cn);
       }},
      {"strichartz-pieces",
       "Dyadic time pieces of the propagator (proof of the mixed-norm bound (2.3)): per-piece "
       "ratios of the absolutely-integrated evolution against the predicted 2^{((d/2)(1/p - "
       "1/q) - 1) j} scaling (slope within thresholds.slope_tol), and the endpoint space-time "
       "ratio of display (2.5) over random band-limited probes.",
       [](const ExperimentConfig& c, int threads) {
         StrichartzConfig st;
         st.d = static_cast<int>(c.get_int("experiment.d", st.d));
         st.inv_p = c.get_num("norms.inv_p", st.inv_p);
         st.inv_q = c.get_num("norms.inv_q", st.inv_q);
         st.j_lo = static_cast<int>(c.get_int("sweep.j_lo", st.j_lo));
         st.j_hi = static_cast<int>(c.get_int("sweep.j_hi", st.j_hi));
         st.probes = static_cast<int>(c.get_int("sweep.probes", st.probes));
         st.k_max = static_cast<int>(c.get_int("grid.k_max", st.k_max));
         st.box_extent = c.get_num("grid.box_extent", st.box_extent);
         st.box_points = static_cast<int>(c.get_int("grid.box_points", st.box_points));
         st.slope_tol = c.get_num("thresholds.slope_tol", st.slope_tol);
         st.seed = c.seed;
         st.threads = threads;
         return experiment_strichartz_pieces(st);
       }},
  };
  return reg;
}

inline const ExperimentInfo* find_experiment(const std::string& name) {
  for (const auto& e : experiment_registry())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace hspec
