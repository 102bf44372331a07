// Acceptance suite: one pass/fail line per criterion, exit nonzero on any
// failure. Criterion 15 (byte-identical reruns) drives the CLI binary whose
// path is argv[1]; without it the rerun comparison happens in-process.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hspec/experiments_inequalities.hpp"
#include "hspec/experiments_spectral.hpp"
#include "hspec/registry.hpp"
#include "hspec/report.hpp"

using namespace hspec;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;
const int kThreads = 2;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  const auto start = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  if (!ok) ++g_failures;
  std::printf("%s criterion %2d: %s (%.1f s / %.0f s)%s%s\n", ok ? "PASS" : "FAIL", number,
              label.c_str(), secs, budget_seconds, detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  criterion(1, "hermite orthonormality, N = 128, m,n <= 60, tol 1e-10", 5.0, [](std::string& d) {
    const auto& rule = gauss_hermite_rule(128);
    const int M = 60;
    std::vector<std::vector<double>> H(static_cast<std::size_t>(M + 1),
                                       std::vector<double>(rule.nodes.size()));
    std::vector<double> seq(static_cast<std::size_t>(M + 1));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      hermite_sequence(M, rule.nodes[i], seq.data());
      for (int m = 0; m <= M; ++m) H[static_cast<std::size_t>(m)][i] = seq[static_cast<std::size_t>(m)];
    }
    double worst = 0;
    for (int m = 0; m <= M; ++m) {
      for (int n = m; n <= M; ++n) {
        double s = 0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
          s += rule.weights[i] * H[static_cast<std::size_t>(m)][i] * H[static_cast<std::size_t>(n)][i];
        worst = std::max(worst, std::fabs(s - (m == n ? 1.0 : 0.0)));
      }
    }
    d = "max |<h_m, h_n> - delta| = " + std::to_string(worst);
    return worst < 1e-10;
  });

  criterion(2, "projection cross-route, d = 1, k <= 10, 20 seeds, rel L2 < 1e-4", 60.0,
            [](std::string& d) {
    const auto box = Grid::uniform_box(1, 11.0, 1201);
    std::vector<int> ks;
    for (int k = 0; k <= 10; ++k) ks.push_back(k);
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng = Rng::derive(1000, seed);
      SpectralCoefficients f;
      f.dim = 1;
      f.k_max = 32;
      for (int k = 0; k <= 32; ++k) f.c.emplace(MultiIndex({k}), cplx(rng.normal(), rng.normal()));
      const auto ints = project_integral_batch(f, ks, box);
      for (std::size_t i = 0; i < ks.size(); ++i) {
        const auto expn = project_expansion(f, ks[i], box);
        double num = 0, den = 0;
        for (std::size_t n = 0; n < expn.size(); ++n) {
          num += std::norm(ints[i][n] - expn[n]);
          den += std::norm(expn[n]);
        }
        worst = std::max(worst, std::sqrt(num / den));
      }
    }
    d = "max rel L2 disagreement = " + std::to_string(worst);
    return worst < 1e-4;
  });

  criterion(3, "resolvent identities and eigenfunction blow-up", 10.0, [](std::string& d) {
    Rng rng(2);
    SpectralCoefficients f;
    f.dim = 3;
    f.k_max = 12;
    for (int k = 0; k <= 12; ++k)
      for (const auto& a : level_indices(k, 3)) f.c.emplace(a, cplx(rng.normal(), rng.normal()));
    const cplx z(4.4, 1.3);
    SpectralMultiplier hz{[z](int k) { return cplx(2.0 * k + 3.0, 0.0) - z; }};
    const auto back = multiplier_apply(resolvent(f, z, 1), hz);
    double worst = 0;
    for (const auto& [a, v] : back.c) worst = std::max(worst, std::abs(v - f.coeff(a)));
    if (worst >= 1e-10) {
      d = "inverse-pair residual " + std::to_string(worst);
      return false;
    }
    for (double eps : {1e-1, 1e-2}) {
      for (int m : {1, 2}) {
        const MultiIndex alpha({4, 1, 0});  // eigenvalue 13
        const auto out = resolvent(eigenfunction(alpha), cplx(13.0 - eps, 0.0), m);
        const double ratio = std::abs(out.coeff(alpha));
        if (std::fabs(ratio - std::pow(eps, -m)) > 1e-12 * std::pow(eps, -m)) {
          d = "blow-up ratio off at eps = " + std::to_string(eps);
          return false;
        }
      }
    }
    d = "inverse-pair residual " + std::to_string(worst) + ", blow-up exact";
    return true;
  });

  criterion(4, "projection sweep, (p,q) = (2,6), k in [1,40], restricted-weak variant", 600.0,
            [](std::string& d) {
    ProjectionSweepConfig pc;
    pc.threads = kThreads;
    const auto res = experiment_projection_sweep(pc);
    d = "lebesgue spread " + std::to_string(res.get("lebesgue_spread")) + ", restricted spread " +
        std::to_string(res.get("restricted_spread"));
    return res.pass;
  });

  criterion(5, "resolvent uniformity on the critical segment", 600.0, [](std::string& d) {
    ResolventSweepConfig rc;
    rc.threads = kThreads;
    const auto res = experiment_resolvent_sweep(rc);
    d = "normalized spread " + std::to_string(res.get("normalized_spread"));
    return res.pass;
  });

  criterion(6, "zeta_n uniform boundedness and the sigma sweep", 60.0, [](std::string& d) {
    ZetaSweepConfig zc;
    zc.threads = kThreads;
    const auto res = experiment_zeta_sweep(zc);
    d = "slope " + std::to_string(res.get("zeta_slope")) + ", sigma sup " +
        std::to_string(res.get("sigma_sup"));
    return res.pass;
  });

  criterion(7, "multiplier class: pass and the two negative controls", 30.0, [](std::string& d) {
    MultiplierClassSweepConfig mc;
    const auto res = experiment_multiplier_class(mc);
    d = "good=" + std::to_string(res.get("g_mu_tau_pass")) +
        " constant=" + std::to_string(res.get("constant_pass")) +
        " pole=" + std::to_string(res.get("g_0_0_pass"));
    return res.pass;
  });

  criterion(8, "lorentz norm exactness on 1e3 random functions", 30.0, [](std::string& d) {
    const auto g = Grid::uniform_box(1, 4.5, 10);
    GridFunction ind(g);
    for (std::size_t i = 2; i <= 5; ++i) ind[i] = 1.0;
    if (std::fabs(lorentz_norm(ind, LorentzExponent(2.0, 1.0)) - 4.0) > 1e-12) {
      d = "indicator closed form off";
      return false;
    }
    const auto g2 = Grid::uniform_box(2, 2.5, 9);
    Rng rng(8);
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      auto f = sample(g2, [&rng](const double*) { return cplx(rng.normal(), rng.normal()); });
      const double p = rng.uniform(1.1, 5.0);
      const double lp = lebesgue_norm(f, p);
      worst = std::max(worst, std::fabs(lorentz_norm(f, LorentzExponent(p, p)) - lp) / lp);
      if (lorentz_norm(f, LorentzExponent(p, INFINITY)) >
          lorentz_norm(f, LorentzExponent(p, 1.0 + 3.0 * rng.uniform())) * (1 + 1e-12)) {
        d = "weak-norm domination violated";
        return false;
      }
    }
    d = "max rel |L^{p,p} - L^p| = " + std::to_string(worst);
    return worst < 1e-12;
  });

  criterion(9, "carleman ratio across the weight sweep, scale invariance", 300.0,
            [](std::string& d) {
    CarlemanRatioConfig cc;
    cc.threads = kThreads;
    const auto res = experiment_carleman_ratio(cc);
    d = "spread " + std::to_string(res.get("spread")) + ", scale drift " +
        std::to_string(res.get("scale_drift"));
    return res.pass;
  });

  criterion(10, "sobolev form: beta sweep, inverse pair < 1e-6", 300.0, [](std::string& d) {
    SobolevRatioConfig sc;
    sc.threads = kThreads;
    const auto res = experiment_sobolev_ratio(sc);
    d = "spread " + std::to_string(res.get("spread")) + ", residual " +
        std::to_string(res.get("inverse_pair_residual"));
    return res.pass;
  });

  criterion(11, "kernel decay: hormander slope and dyadic envelope", 300.0, [](std::string& d) {
    KernelDecayConfig kc;
    kc.threads = kThreads;
    const auto res = experiment_kernel_decay(kc);
    d = "slope " + std::to_string(res.get("hormander_slope")) + " in [-2.3, -1.7], envelope max/ref " +
        std::to_string(res.get("envelope_c_max") / res.get("envelope_c_ref"));
    return res.pass;
  });

  criterion(12, "littlewood-paley constants and normability", 120.0, [](std::string& d) {
    LpSquareConfig lc;
    lc.threads = kThreads;
    const auto res = experiment_lp_square(lc);
    d = "constants in [" + std::to_string(res.get("square_ratio_min")) + ", " +
        std::to_string(res.get("square_ratio_max")) + "], normability " +
        std::to_string(res.get("normability_ratio_max"));
    return res.pass;
  });

  criterion(13, "critical-line necessity: flat on the line, growth beyond", 120.0,
            [](std::string& d) {
    CriticalNecessityConfig cn;
    const auto res = experiment_critical_necessity(cn);
    d = "slope(critical) " + std::to_string(res.get("slope_critical")) + ", slope(beyond) " +
        std::to_string(res.get("slope_beyond"));
    return res.pass;
  });

  criterion(14, "exponent geometry in exact arithmetic", 1.0, [](std::string& d) {
    const auto s = special_points(3);
    if (!(s.A == ExponentPoint{rat(5, 6), rat(1, 2)}) ||
        !(s.B == ExponentPoint{rat(11, 12), rat(1, 4)}) ||
        !(s.D == ExponentPoint{rat(5, 6), rat(1, 6)}) ||
        !(s.B_dual == ExponentPoint{rat(3, 4), rat(1, 12)}) ||
        !(s.A_dual == ExponentPoint{rat(1, 2), rat(1, 6)})) {
      d = "d = 3 points off";
      return false;
    }
    if (region_contains(s.B, 3) != RegionLocation::excluded_vertex ||
        region_contains(s.center, 3) != RegionLocation::boundary ||
        region_contains(ExponentPoint{rat(3, 4), rat(1, 3)}, 3) != RegionLocation::inside) {
      d = "region classification off";
      return false;
    }
    for (int dd = 3; dd <= 12; ++dd) {
      const auto sp = special_points(dd);
      if (sp.B.x - sp.B.y != Rat(2) / Rat(BigInt(dd))) {
        d = "critical offset off at d = " + std::to_string(dd);
        return false;
      }
      if (sp.B.x + sp.B_dual.x != Rat(2) * sp.D.x || sp.B.y + sp.B_dual.y != Rat(2) * sp.D.y) {
        d = "midpoint identity off at d = " + std::to_string(dd);
        return false;
      }
    }
    d = "all rational identities exact";
    return true;
  });

  criterion(15, "determinism: identical config and seed give byte-identical csv", 120.0,
            [&cli](std::string& d) {
    const std::string config_text =
        "[experiment]\n"
        "name = zeta-sweep\n"
        "seed = 31\n"
        "[sweep]\n"
        "n_set = 16, 64, 256\n"
        "t_count = 4000\n"
        "sigma_k_max = 1024\n"
        "sigma_t_count = 8000\n";
    if (!cli.empty()) {
      const fs::path tmp = fs::temp_directory_path() / "hspec-acceptance";
      fs::create_directories(tmp / "run1");
      fs::create_directories(tmp / "run2");
      const fs::path cfgp = tmp / "det.ini";
      write_file(cfgp.string(), config_text);
      const std::string cmd1 = cli + " run --config " + cfgp.string() + " --out " +
                               (tmp / "run1").string() + " --threads 2 > /dev/null";
      const std::string cmd2 = cli + " run --config " + cfgp.string() + " --out " +
                               (tmp / "run2").string() + " --threads 1 > /dev/null";
      if (std::system(cmd1.c_str()) != 0 || std::system(cmd2.c_str()) != 0) {
        d = "cli run failed";
        return false;
      }
      const std::string a = slurp((tmp / "run1" / "zeta-sweep.csv").string());
      const std::string b = slurp((tmp / "run2" / "zeta-sweep.csv").string());
      if (a.empty() || a != b) {
        d = "csv outputs differ";
        return false;
      }
      // exit-code contract: unknown experiment name is a configuration error
      write_file((tmp / "bad.ini").string(), "[experiment]\nname = no-such\n");
      const int rc = std::system(
          (cli + " run --config " + (tmp / "bad.ini").string() + " > /dev/null 2>&1").c_str());
      if (WEXITSTATUS(rc) != 1) {
        d = "unknown-experiment exit code is not 1";
        return false;
      }
      d = "csv byte-identical across reruns and thread counts";
      return true;
    }
    const auto cfg = parse_config(config_text);
    const auto* info = find_experiment(cfg.name);
    const auto r1 = info->run(cfg, 2);
    const auto r2 = info->run(cfg, 1);
    d = "in-process rerun comparison";
    return csv_text(r1) == csv_text(r2);
  });

  std::printf("%s: %d of 15 criteria passed\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              15 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
