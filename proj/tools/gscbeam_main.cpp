#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gscbeam/experiment.hpp"
#include "gscbeam/selfcheck.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitAllRunsDivergent = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int runs = 0;
  bool runs_set = false;
  bool full = false;
  int workers = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "experiment config file (JSON)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opt.out_dir, "output directory");
  cmd->add_option("--seed", opt.seed, "master seed override")->each([&](const std::string&) {
    opt.seed_set = true;
  });
  cmd->add_option("--runs", opt.runs, "run count override")->each([&](const std::string&) {
    opt.runs_set = true;
  });
  cmd->add_flag("--full", opt.full, "use the full 1000-run protocol");
  cmd->add_option("--workers", opt.workers, "worker thread count")->check(CLI::PositiveNumber);
}

gscbeam::ExperimentConfig load_config(const std::string& experiment_id,
                                      const CommonOptions& opt) {
  gscbeam::ConfigOverrides overrides;
  if (opt.seed_set) overrides.seed = opt.seed;
  if (const char* env = std::getenv("SEED"); env != nullptr && !opt.seed_set)
    overrides.seed = std::stoull(env);
  if (opt.runs_set) overrides.runs = opt.runs;
  overrides.full = opt.full;
  if (opt.config_path.empty()) return gscbeam::default_config_for(experiment_id, overrides);
  std::ifstream in(opt.config_path);
  if (!in) throw std::invalid_argument("cannot open config file " + opt.config_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return gscbeam::parse_config(buf.str(), overrides);
}

int dispatch(const std::string& experiment_id, const CommonOptions& opt) {
  const gscbeam::ExperimentConfig cfg = load_config(experiment_id, opt);
  std::vector<std::string> paths;
  if (experiment_id == "fig2a")
    paths = gscbeam::run_fig2a(cfg, opt.out_dir, opt.workers);
  else if (experiment_id == "fig2b")
    paths = gscbeam::run_fig2b(cfg, opt.out_dir, opt.workers);
  else if (experiment_id == "fig3")
    paths = gscbeam::run_fig3(cfg, opt.out_dir, opt.workers);
  else if (experiment_id == "fig4")
    paths = gscbeam::run_fig4(cfg, opt.out_dir, opt.workers);
  else if (experiment_id == "fig5")
    paths = gscbeam::run_fig5(cfg, opt.out_dir, opt.workers);
  for (const auto& p : paths) std::cout << p << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blind adaptive beamforming testbench"};
  app.require_subcommand(1);

  CommonOptions opt;
  for (const char* name : {"fig2a", "fig2b", "fig3", "fig4", "fig5"}) {
    CLI::App* cmd = app.add_subcommand(
        name, std::string("run the ") + name + " experiment and write CSV tables");
    add_common(cmd, opt);
  }
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "run the built-in property and oracle checks");
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "per-iteration operation counts of the VFF mechanisms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (validate_cmd->parsed()) return gscbeam::run_selfcheck(std::cout) == 0 ? kExitOk : kExitFailure;
    if (bench_cmd->parsed()) {
      gscbeam::run_bench(std::cout);
      return kExitOk;
    }
    for (const char* name : {"fig2a", "fig2b", "fig3", "fig4", "fig5"})
      if (app.get_subcommand(name)->parsed()) return dispatch(name, opt);
    return kExitConfigError;
  } catch (const gscbeam::AllRunsDivergentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAllRunsDivergent;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
