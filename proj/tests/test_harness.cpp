#include <catch2/catch_amalgamated.hpp>

#include "hspec/experiments_inequalities.hpp"
#include "hspec/experiments_spectral.hpp"

using namespace hspec;

TEST_CASE("probe generation is pure in (seed, index)") {
  const auto g = Grid::uniform_box(1, 6.0, 65);
  ProbeFamilyConfig fc;
  fc.kind = ProbeFamilyKind::random_bandlimited;
  fc.seed = 99;
  fc.count = 4;
  fc.d = 1;
  fc.k_max = 8;
  const auto a = make_probes(fc, g);
  const auto b = make_probes(fc, g);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].id == b[i].id);
    for (std::size_t n = 0; n < a[i].field.size(); ++n)
      REQUIRE(a[i].field[n] == b[i].field[n]);
  }
}

TEST_CASE("operator-norm lower bounds on reference operators") {
  const auto g = Grid::uniform_box(1, 6.0, 129);
  ProbeFamilyConfig fc;
  fc.kind = ProbeFamilyKind::random_bandlimited;
  fc.seed = 5;
  fc.count = 6;
  fc.d = 1;
  fc.k_max = 10;
  const auto probes = make_probes(fc, g);

  SECTION("identity has ratio 1") {
    const auto est = opnorm_lower([](const Probe& p) { return p.field; }, NormSpec::lebesgue(2.0),
                                  NormSpec::lebesgue(2.0), probes);
    REQUIRE(est.ratio == Catch::Approx(1.0).epsilon(1e-12));
  }
  SECTION("projection attains 1 on a resonant packet") {
    ProbeFamilyConfig pk;
    pk.kind = ProbeFamilyKind::hermite_packets;
    pk.seed = 7;
    pk.count = 3;
    pk.d = 1;
    pk.level = 4;
    auto packet_probes = make_probes(pk, g);
    const auto est = opnorm_lower(
        [&g](const Probe& p) { return synthesize(project_level(p.coeffs, 4), g); },
        NormSpec::lebesgue(2.0), NormSpec::lebesgue(2.0), packet_probes);
    REQUIRE(est.ratio == Catch::Approx(1.0).epsilon(1e-10));
  }
  SECTION("scalar multiples scale the ratio") {
    const auto est = opnorm_lower(
        [](const Probe& p) {
          GridFunction out = p.field;
          for (auto& v : out.values()) v *= cplx(0.0, -2.5);
          return out;
        },
        NormSpec::lebesgue(2.0), NormSpec::lebesgue(2.0), probes);
    REQUIRE(est.ratio == Catch::Approx(2.5).epsilon(1e-12));
  }
  SECTION("degenerate probes are rejected") {
    std::vector<Probe> zeros(2);
    for (auto& p : zeros) {
      p.id = "zero";
      p.field = GridFunction(g);
    }
    REQUIRE_THROWS_AS(opnorm_lower([](const Probe& p) { return p.field; },
                                   NormSpec::lebesgue(2.0), NormSpec::lebesgue(2.0), zeros),
                      degenerate_probe_error);
  }
  SECTION("adding probes never decreases the bound") {
    auto few = std::vector<Probe>(probes.begin(), probes.begin() + 2);
    const auto est_few = opnorm_lower([](const Probe& p) { return p.field; },
                                      NormSpec::lebesgue(1.5), NormSpec::lebesgue(3.0), few);
    const auto est_all = opnorm_lower([](const Probe& p) { return p.field; },
                                      NormSpec::lebesgue(1.5), NormSpec::lebesgue(3.0), probes);
    REQUIRE(est_all.ratio >= est_few.ratio);
  }
}

TEST_CASE("coordinate ascent refines a bump probe") {
  const auto g = Grid::uniform_box(1, 8.0, 257);
  ProbeFamilyConfig fc;
  fc.kind = ProbeFamilyKind::gaussian_bumps;
  fc.seed = 21;
  fc.count = 2;
  fc.d = 1;
  fc.k_max = 24;
  fc.width_lo = 1.4;
  fc.width_hi = 2.0;  // deliberately far from the optimum
  auto probes = make_probes(fc, g);

  // H^{-1}-style smoothing ratio improves as the bump sharpens; ascent must
  // not decrease the estimate.
  auto op = [&g](const Probe& p) {
    return synthesize(fractional_inverse(p.coeffs, 0.45, FractionalRoute::spectral), g);
  };
  ProbeRealizer realize = [&g, &fc](const std::vector<double>& theta) {
    if (theta[0] < 0.1 || theta[0] > 4.0) throw parameter_error("width out of range");
    Probe p;
    p.id = "bump-opt";
    p.coeffs = detail::modulated_gaussian_coeffs(1, theta[0], {theta[1]}, {theta[2]}, fc.k_max);
    p.field = synthesize(p.coeffs, g);
    p.params = theta;
    return p;
  };
  const auto base = opnorm_lower(op, NormSpec::lebesgue(6.0 / 5.0), NormSpec::lebesgue(6.0),
                                 probes, 0);
  const auto refined = opnorm_lower(op, NormSpec::lebesgue(6.0 / 5.0), NormSpec::lebesgue(6.0),
                                    probes, 50, realize);
  REQUIRE(refined.ratio >= base.ratio);
}

TEST_CASE("projection sweep smoke run") {
  ProjectionSweepConfig pc;
  pc.k_lo = 1;
  pc.k_hi = 5;
  pc.probes_per_k = 6;
  pc.box_points = 40;
  pc.box_extent = 6.5;
  pc.gh_points = 14;
  pc.threads = 2;
  const auto res = experiment_projection_sweep(pc);
  REQUIRE(res.pass);
  REQUIRE(res.get("lebesgue_spread") <= 10.0);
  REQUIRE(res.get("restricted_spread") <= 10.0);
  REQUIRE(!res.rows.empty());
}

TEST_CASE("resolvent sweep smoke run with the eigenfunction scaling law") {
  ResolventSweepConfig rc;
  rc.j_hi = 4;
  rc.tau_set = {5.0};
  rc.box_points = 40;
  rc.box_extent = 8.0;
  rc.threads = 2;
  const auto res = experiment_resolvent_sweep(rc);
  REQUIRE(res.get("normalized_spread") <= 10.0);

  // the raw ratio on an eigenfunction probe scales like the predicted
  // (1 + |Im z|)^{1-m} exponent in a log-log fit across Im z
  const auto f = eigenfunction(MultiIndex({2, 0, 0}));
  std::vector<double> lx, ly;
  for (double im : {1.0, 10.0, 100.0}) {
    const cplx z(8.0, im);  // Re z mid-gap below the eigenvalue 7... offset
    const auto out = resolvent(f, z, 2);
    lx.push_back(std::log(1.0 + im));
    ly.push_back(std::log(out.l2() / f.l2()));
  }
  const double slope = fit_slope(lx, ly);
  // |2k+d-z|^{-2} with Re z pinned near the eigenvalue behaves like |Im z|^{-2};
  // the uniform bound's exponent 1-m = -1 dominates it, so the measured slope
  // must sit at or below it
  REQUIRE(slope <= -1.0 + 0.1);
}

TEST_CASE("zeta sweep smoke run with negative control recorded") {
  ZetaSweepConfig zc;
  zc.n_set = {16, 64, 256};
  zc.t_count = 3000;
  zc.sigma_k_max = 512;
  zc.sigma_t_count = 8000;
  zc.slope_max = 0.05;  // the truncated n-set is still converging
  zc.threads = 2;
  const auto res = experiment_zeta_sweep(zc);
  REQUIRE(res.get("zeta_slope") <= 0.05);
  REQUIRE(res.get("sigma_sup") > 1.84);
  REQUIRE(res.get("sigma_sup") < 1.86);
  // control slope merely exists
  (void)res.get("control_slope");
}

TEST_CASE("multiplier class checks fire exactly as required") {
  MultiplierClassSweepConfig mc;
  mc.check.n_range = 2000;
  mc.check.sum_terms = 40000;
  const auto res = experiment_multiplier_class(mc);
  REQUIRE(res.pass);
  REQUIRE(res.get("g_mu_tau_pass") == 1.0);
  REQUIRE(res.get("constant_pass") == 0.0);
  REQUIRE(res.get("g_0_0_pass") == 0.0);
}

TEST_CASE("carleman ratio: scale invariance and degenerate input") {
  CarlemanRatioConfig cc;
  cc.alpha_set = {0.7};
  cc.trace_gaps = {};
  cc.box_points = 32;
  cc.time_points = 21;
  const auto res = experiment_carleman_ratio(cc);
  REQUIRE(res.rows.size() == 1);
  const double r1 = res.rows[0].ratio;
  REQUIRE(std::isfinite(r1));
  REQUIRE(r1 > 0.0);

  // the two sides are homogeneous of the same degree, so the ratio is scale
  // free by construction; verify via the weight evaluators on a scaled bump
  const auto sides = detail::carleman_sides(cc, 0.7);
  REQUIRE(sides.lhs / sides.rhs == Catch::Approx(r1).epsilon(1e-12));

  CarlemanRatioConfig bad = cc;
  bad.alpha_set = {1.0};  // beta = 0: inadmissible
  REQUIRE_THROWS_AS(experiment_carleman_ratio(bad), config_error);
}

TEST_CASE("sobolev ratio smoke run with per-mode oracle") {
  SobolevRatioConfig sc;
  sc.beta_j_hi = 3;
  sc.box_points = 32;
  sc.box_extent = 7.0;
  sc.time_points = 513;
  sc.frame_stride = 16;
  sc.threads = 2;
  const auto res = experiment_sobolev_ratio(sc);
  REQUIRE(res.get("spread") <= 10.0);
  REQUIRE(res.get("inverse_pair_residual") < 1e-6);
  REQUIRE(res.get("cross_route_disagreement") < 1e-5);
}

TEST_CASE("kernel decay smoke run") {
  KernelDecayConfig kc;
  kc.box_points = 48;
  kc.k_max = 16;
  kc.beta = 12.12;
  kc.probes = 2;
  kc.t_samples = log_spaced(1.0, 50.0, 6);
  kc.t_small = log_spaced(0.05, 0.4, 4);
  kc.j_lo = 0;
  kc.j_hi = 4;
  kc.threads = 2;
  const auto res = experiment_kernel_decay(kc);
  REQUIRE(res.get("envelope_ok") == 1.0);
  REQUIRE(std::isfinite(res.get("hormander_slope")));
  // single-mode action: the kernel on an eigenfunction is the scalar factor
  const auto f = eigenfunction(MultiIndex({3, 0, 0}));
  SpectralCoefficients scaled = f;
  for (auto& [a, v] : scaled.c) v *= mode_kernel_eval(12.12 - a.degree(), 0.7);
  REQUIRE(scaled.l2() == Catch::Approx(std::fabs(mode_kernel_eval(12.12 - 3, 0.7)) * f.l2())
                             .epsilon(1e-13));
  // negative times with all causal rates: nothing comes back
  SpectralCoefficients neg = f;
  for (auto& [a, v] : neg.c) v *= mode_kernel_eval(12.12 - a.degree(), -0.7);
  REQUIRE(neg.l2() == 0.0);
}

TEST_CASE("lp square smoke run") {
  LpSquareConfig lc;
  lc.trials = 4;
  lc.norm_trials = 4;
  lc.box_points = 24;
  lc.time_points = 128;
  lc.threads = 2;
  const auto res = experiment_lp_square(lc);
  REQUIRE(res.get("square_ratio_min") >= 1.0 / 8.0);
  REQUIRE(res.get("square_ratio_max") <= 8.0);
  REQUIRE(res.get("normability_ratio_max") <= 8.0);
}

TEST_CASE("dilation families: boundary flat, beyond growing") {
  CriticalNecessityConfig cn;
  cn.base.k_max = 80;
  cn.base.box_points = 48;
  cn.base.lambdas = {1.0, 1.4142135623730951, 2.0, 2.8284271247461903};
  const auto res = experiment_critical_necessity(cn);
  REQUIRE(std::fabs(res.get("slope_critical")) <= 0.1);
  REQUIRE(res.get("slope_beyond") >= 0.1);
  // lambda = 1 baseline finite
  for (const auto& r : res.rows)
    if (r.sweep_value == 1.0) REQUIRE(std::isfinite(r.ratio));
}

TEST_CASE("strichartz pieces smoke run") {
  StrichartzConfig st;
  st.j_lo = 4;
  st.j_hi = 7;
  st.probes = 2;
  st.endpoint_probes = 3;
  st.k_max = 12;
  st.box_points = 36;
  st.threads = 2;
  const auto res = experiment_strichartz_pieces(st);
  REQUIRE(std::isfinite(res.get("endpoint_ratio_max")));
  REQUIRE(std::fabs(res.get("piece_slope") - res.get("piece_slope_predicted")) <= 0.15);
}
