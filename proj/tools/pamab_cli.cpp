#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pamab/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Preference-aware multi-objective bandit simulator"};
  app.require_subcommand(1);

  pamab::CliOptions opts;
  std::string config, out, results;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config) sub->add_option("--config", config, "Run configuration (JSON)");
    sub->add_option("--set", opts.overrides, "Override a config key, KEY=VALUE (repeatable)");
    sub->add_option("--seed", seed, "Override the base seed");
    sub->add_option("--parallel", opts.parallel, "Worker threads for trials (1 = serial)")
        ->check(CLI::NonNegativeNumber);
  };

  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  add_common(run, true);
  run->add_option("--out", out, "Output directory")->default_val("out");

  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  add_common(validate, true);

  auto* prop1 = app.add_subcommand("prop1", "Run every algorithm on the two-arm lower-bound instance");
  add_common(prop1, false);
  prop1->add_option("--out", out, "Output directory")->default_val("out/prop1");

  auto* wls = app.add_subcommand("wls-demo", "Compare WLS and least-squares preference estimation");
  wls->add_option("--seeds", opts.seeds, "Number of seeds")->default_val(50);
  wls->add_option("--seed", seed, "Base seed");
  wls->add_option("--out", out, "Output directory")->default_val("out/wls-demo");

  auto* plot = app.add_subcommand("plot", "Render a results.csv as an SVG regret chart");
  plot->add_option("results", results, "results.csv to plot")->required();
  plot->add_option("--out", out, "Output SVG path")->default_val("regret.svg");

  CLI11_PARSE(app, argc, argv);

  opts.config = config;
  opts.out = out;
  opts.results = results;
  for (auto* sub : {run, validate, prop1, wls}) {
    if (sub->parsed() && sub->count("--seed") > 0) opts.seed = seed;
  }

  if (run->parsed()) return pamab::cmd_run(opts, std::cout, std::cerr);
  if (validate->parsed()) return pamab::cmd_validate(opts, std::cout, std::cerr);
  if (prop1->parsed()) return pamab::cmd_prop1(opts, std::cout, std::cerr);
  if (wls->parsed()) return pamab::cmd_wls_demo(opts, std::cout, std::cerr);
  if (plot->parsed()) return pamab::cmd_plot(opts, std::cout, std::cerr);
  return pamab::kExitInvalid;
}
