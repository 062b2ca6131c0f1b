#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "acid/config.hpp"
#include "acid/run.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string data_path;
  std::string out_dir;
  std::string seed;
  std::string threads;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_data) {
  cmd->add_option("--config", opts.config_path, "run configuration file");
  if (needs_data)
    cmd->add_option("--data", opts.data_path, "input CSV (header mandatory)");
  cmd->add_option("--out", opts.out_dir, "artifact directory")->required();
  cmd->add_option("--seed", opts.seed, "seed override");
  cmd->add_option("--threads", opts.threads, "worker thread count");
}

int dispatch(const std::string& command, const CommonOptions& opts) {
  try {
    acid::RunConfig config = opts.config_path.empty()
                                 ? acid::RunConfig{}
                                 : acid::RunConfig::parse_file(opts.config_path);
    if (!opts.seed.empty()) config.set("seed", opts.seed);
    if (!opts.threads.empty()) config.set("threads", opts.threads);
    acid::RunPaths paths{opts.data_path, opts.out_dir};
    return acid::run_command(command, config, paths, std::cerr);
  } catch (const acid::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Predictive resampling with almost-c.i.d. predictive schemes: kernel "
      "and parametric one-step-ahead rules, a.c.i.d. diagnostics, and "
      "martingale-posterior evaluation pipelines"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto* resample = app.add_subcommand(
      "resample", "forward-simulate B paths of length M and summarize");
  add_common(resample, opts, true);
  auto* diagnose = app.add_subcommand(
      "diagnose", "run a.c.i.d. diagnostics for a configured scheme");
  add_common(diagnose, opts, true);
  auto* simulate = app.add_subcommand(
      "simulate", "write synthetic datasets from the study generators");
  add_common(simulate, opts, false);
  auto* benchmark = app.add_subcommand(
      "benchmark", "run an evaluation study and write median metrics");
  add_common(benchmark, opts, false);
  auto* bandwidth = app.add_subcommand(
      "bandwidth", "select a bandwidth (and schedule, with resample.m set)");
  add_common(bandwidth, opts, true);

  CLI11_PARSE(app, argc, argv);

  if (resample->parsed()) return dispatch("resample", opts);
  if (diagnose->parsed()) return dispatch("diagnose", opts);
  if (simulate->parsed()) return dispatch("simulate", opts);
  if (benchmark->parsed()) return dispatch("benchmark", opts);
  if (bandwidth->parsed()) return dispatch("bandwidth", opts);
  return 2;
}
