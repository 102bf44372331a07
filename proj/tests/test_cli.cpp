#include <catch2/catch_amalgamated.hpp>

#include "hspec/config.hpp"
#include "hspec/registry.hpp"
#include "hspec/report.hpp"

using namespace hspec;

TEST_CASE("config parse and canonical echo round-trip") {
  const std::string text =
      "# comment\n"
      "[experiment]\n"
      "name = zeta-sweep\n"
      "seed = 17\n"
      "\n"
      "[sweep]\n"
      "n_set = 16, 32, 64\n"
      "t_count = 2000\n"
      "[thresholds]\n"
      "slope_max = 0.02\n";
  const auto cfg = parse_config(text);
  REQUIRE(cfg.name == "zeta-sweep");
  REQUIRE(cfg.seed == 17);
  REQUIRE(cfg.get_int("sweep.t_count", 0) == 2000);
  REQUIRE(cfg.get_num("thresholds.slope_max", 0.0) == 0.02);
  REQUIRE(cfg.get_str("sweep.n_set", "") == "16, 32, 64");

  const std::string echoed = echo_config(cfg);
  const auto cfg2 = parse_config(echoed);
  REQUIRE(cfg2.kv == cfg.kv);
  REQUIRE(echo_config(cfg2) == echoed);
}

TEST_CASE("config errors") {
  REQUIRE_THROWS_AS(parse_config("[experiment\nname = x\n"), config_error);
  REQUIRE_THROWS_AS(parse_config("key = outside\n"), config_error);
  REQUIRE_THROWS_AS(parse_config("[s]\njust a line\n"), config_error);
  const auto cfg = parse_config("[a]\nx = not-a-number\n");
  REQUIRE_THROWS_AS(cfg.get_num("a.x", 0.0), config_error);
  REQUIRE(cfg.get_num("a.missing", 3.5) == 3.5);
  REQUIRE(parse_config("[a]\nx = inf\n").get_num("a.x", 0.0) == INFINITY);
}

TEST_CASE("registry completeness and anchors") {
  const auto& reg = experiment_registry();
  REQUIRE(reg.size() >= 11);
  for (const auto& e : reg) {
    REQUIRE_FALSE(e.name.empty());
    REQUIRE_FALSE(e.describe.empty());
    REQUIRE(bool(e.run));
  }
  REQUIRE(find_experiment("carleman-ratio") != nullptr);
  REQUIRE(find_experiment("carleman-ratio")->describe.find("(1.4)") != std::string::npos);
  REQUIRE(find_experiment("carleman-ratio")->describe.find("admissib") != std::string::npos);
  REQUIRE(find_experiment("zeta-sweep")->describe.find("(3.7)") != std::string::npos);
  REQUIRE(find_experiment("no-such-experiment") == nullptr);
}

TEST_CASE("csv schema matches the report row") {
  REQUIRE(std::string(csv_header()) ==
          "experiment,d,p,q,a,b,r,s,sweep_key,sweep_value,probe,input_norm,output_norm,ratio,"
          "normalized_ratio,seed");
  ReportRow r{"demo", 3, 2.0, 6.0, 2.0, 6.0, 2.0, 2.0, "k", 4.0, "probe0", 1.0,
              0.5, 0.5, 0.5, 42};
  const std::string line = csv_row(r);
  // 16 columns
  REQUIRE(std::count(line.begin(), line.end(), ',') == 15);
  REQUIRE(line.find("demo,3,2,6,2,6,2,2,k,4,probe0,1,0.5,0.5,0.5,42") == 0);
}

TEST_CASE("csv writes 17 significant digits that round-trip") {
  ReportRow r;
  r.experiment = "demo";
  r.sweep_key = "x";
  r.ratio = 0.1 + 0.2;  // not representable
  const std::string line = csv_row(r);
  REQUIRE(line.find("0.30000000000000004") != std::string::npos);
}

TEST_CASE("experiments run identically from identical configs") {
  const std::string text =
      "[experiment]\n"
      "name = zeta-sweep\n"
      "seed = 5\n"
      "[sweep]\n"
      "n_set = 16, 32\n"
      "t_count = 500\n"
      "sigma_k_max = 128\n"
      "sigma_t_count = 2000\n";
  const auto cfg = parse_config(text);
  const auto* info = find_experiment(cfg.name);
  REQUIRE(info != nullptr);
  const auto r1 = info->run(cfg, 1);
  const auto r2 = info->run(cfg, 2);  // thread count must not matter
  REQUIRE(csv_text(r1) == csv_text(r2));
  REQUIRE(summary_text(r1) == summary_text(r2));
}
