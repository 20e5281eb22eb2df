// neurochan: run bundled or user experiment configs.
//
//   neurochan run <config.json> [--out DIR] [--seed N] [--expect-pass]
//   neurochan list-examples [--dir DIR]

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "neurochan/experiment.hpp"

#ifndef NEUROCHAN_CONFIG_DIR
#define NEUROCHAN_CONFIG_DIR "configs"
#endif

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"Design, certify and simulate linear systems with many input channels"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool expect_pass = false;
  auto* run = app.add_subcommand("run", "Run an experiment config and write its artifacts");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output_dir in the config)");
  auto* seed_opt = run->add_option("--seed", seed, "Seed for stochastic experiments (overrides the config)");
  run->add_flag("--expect-pass", expect_pass, "Exit with status 2 when a certificate does not pass");

  std::string examples_dir = NEUROCHAN_CONFIG_DIR;
  auto* list = app.add_subcommand("list-examples", "List the bundled experiment configs");
  list->add_option("--dir", examples_dir, "Directory holding bundled configs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : neurochan::experiment::kValidationError;
  }

  if (*run) {
    neurochan::experiment::RunOptions opts;
    if (!out_dir.empty()) opts.output_dir = out_dir;
    if (seed_opt->count() > 0) opts.seed = seed;
    opts.expect_pass = expect_pass;
    return neurochan::experiment::run(config_path, opts, std::cout);
  }

  if (!fs::is_directory(examples_dir)) {
    std::cerr << "error: example directory not found: " << examples_dir << '\n';
    return neurochan::experiment::kValidationError;
  }
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(examples_dir)) {
    if (entry.path().extension() == ".json") configs.push_back(entry.path());
  }
  std::sort(configs.begin(), configs.end());
  for (const auto& p : configs) {
    std::string kind = "?";
    try {
      kind = neurochan::experiment::load_config(p).kind;
    } catch (const std::exception&) {
      kind = "invalid";
    }
    std::cout << p.stem().string() << '\t' << kind << '\t' << p.string() << '\n';
  }
  return 0;
}
