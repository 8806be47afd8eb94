#include <CLI11.hpp>

#include "dln/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bayesian interpolation for deep linear networks: exact "
               "evidence and posteriors via Meijer-G evaluation, asymptotic "
               "regimes, and Monte Carlo cross-checks"};
  app.require_subcommand(1);

  std::string config_path;
  dln::cli::RunOptions opt;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", opt.seed, "64-bit RNG seed")->capture_default_str();
    sub->add_option("--threads", opt.threads, "worker threads")->capture_default_str();
  };

  for (const char* name : {"evidence-sweep", "posterior-variance",
                           "double-descent", "validate", "oracle-density"})
    add_common(app.add_subcommand(name));

  CLI11_PARSE(app, argc, argv);
  const std::string sub = app.get_subcommands().front()->get_name();
  return dln::cli::run_subcommand(sub, config_path, opt);
}
