// Command-line front end: run registered experiments from a config file,
// describe them, or list the registry. Exit codes: 0 pass, 1 configuration
// error, 2 threshold failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hspec/registry.hpp"
#include "hspec/report.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw hspec::config_error("cannot read config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_command(const std::string& config_path, long long seed_override, bool seed_set,
                std::string out_dir, int threads) {
  hspec::ExperimentConfig cfg = hspec::parse_config(read_file(config_path));
  if (seed_set) {
    cfg.seed = static_cast<std::uint64_t>(seed_override);
    cfg.kv["experiment.seed"] = std::to_string(seed_override);
  }
  if (cfg.name.empty()) throw hspec::config_error("config: missing experiment.name");
  const hspec::ExperimentInfo* info = hspec::find_experiment(cfg.name);
  if (!info) {
    std::cerr << "unknown experiment: " << cfg.name << "\nregistered experiments:\n";
    for (const auto& e : hspec::experiment_registry()) std::cerr << "  " << e.name << "\n";
    return 1;
  }

  if (out_dir.empty()) {
    if (const char* env = std::getenv("HSPEC_OUT")) out_dir = env;
  }
  if (out_dir.empty()) out_dir = cfg.get_str("output.dir", ".");
  fs::create_directories(out_dir);

  hspec::SweepResult res = info->run(cfg, threads);

  const std::string base = (fs::path(out_dir) / res.experiment).string();
  hspec::write_file(base + ".csv", hspec::csv_text(res));
  hspec::write_file(base + "_summary.txt", hspec::summary_text(res));
  hspec::write_file(base + "_config.ini", hspec::echo_config(cfg));
  std::cout << hspec::summary_text(res);
  std::cout << (res.pass ? "PASS" : "FAIL") << " " << res.experiment << "\n";
  return res.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral-calculus verification harness for the Hermite operator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  std::string config_path, out_dir;
  long long seed_override = 0;
  int threads = 1;
  run->add_option("--config", config_path, "path to the key = value config file")->required();
  auto* seed_opt = run->add_option("--seed", seed_override, "override experiment.seed");
  run->add_option("--out", out_dir, "output directory (also HSPEC_OUT env, then output.dir)");
  run->add_option("--threads", threads, "worker threads for sweep points");

  auto* describe = app.add_subcommand("describe", "describe a registered experiment");
  std::string describe_name;
  describe->add_option("name", describe_name, "experiment name")->required();

  app.add_subcommand("list", "list registered experiments");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return run_command(config_path, seed_override, seed_opt->count() > 0, out_dir, threads);
    if (describe->parsed()) {
      const hspec::ExperimentInfo* info = hspec::find_experiment(describe_name);
      if (!info) {
        std::cerr << "unknown experiment: " << describe_name << "\nregistered experiments:\n";
        for (const auto& e : hspec::experiment_registry()) std::cerr << "  " << e.name << "\n";
        return 1;
      }
      std::cout << info->name << "\n" << info->describe << "\n";
      return 0;
    }
    for (const auto& e : hspec::experiment_registry()) std::cout << e.name << "\n";
    return 0;
  } catch (const hspec::config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const hspec::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
