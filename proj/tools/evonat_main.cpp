// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: five experiment commands over one JSON run config.
//
//   evonat fitness      --config run.json [--seed N] [--out DIR]
//   evonat evolve       --config run.json ...
//   evonat conceptualize --config run.json ...
//   evonat collective   --config run.json ...
//   evonat survival     --config run.json ...
//
// Common flags: --seed overrides the config's root seed, --out selects the
// run directory (config.json, events.jsonl, summary.csv, meta.json),
// --workers sets the evaluation thread count, --format {csv,jsonl} picks the
// stdout report style. Exit codes: 0 success, 2 configuration problem,
// 3 infeasible or degenerate input, 4 numerical failure, 1 anything else.

#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "evonat/harness.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::string format;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_path, "Run configuration file")
      ->required();
  cmd->add_option("--out", flags->out_dir,
                  "Run directory for config/events/summary/meta files");
  cmd->add_option("--seed", flags->seed, "Root seed (overrides the config)")
      ->each([flags](const std::string&) { flags->seed_set = true; });
  cmd->add_option("--workers", flags->workers, "Worker thread count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", flags->format, "Report style on stdout")
      ->check(CLI::IsMember({"csv", "jsonl"}));
}

int run_command(const CommonFlags& flags,
                const std::function<evonat::Json(const evonat::RunConfig&,
                                                 evonat::RunLogger&)>& command) {
  try {
    evonat::RunConfig config = evonat::load_run_config(flags.config_path);
    if (flags.seed_set) config.seed = flags.seed;
    if (flags.workers > 0) config.workers = flags.workers;
    if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
    if (!flags.format.empty()) config.format = flags.format;

    evonat::RunLogger logger(config.out_dir,
                             evonat::run_config_to_json(config));
    const evonat::Json report = command(config, logger);
    logger.finalize();
    std::cout << evonat::render_report(report, config.format);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return evonat::exit_code_for_current_exception();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Evolution of encoder models in synthetic worlds under resource "
      "constraints"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    evonat::Json (*fn)(const evonat::RunConfig&, evonat::RunLogger&);
  };
  const Command commands[] = {
      {"fitness",
       "Train the configured model and report its information fitness",
       evonat::run_fitness},
      {"evolve", "Run generational architecture evolution",
       evonat::run_evolve},
      {"conceptualize",
       "Train an autoencoder ensemble and measure latent class intermixing",
       evonat::run_conceptualize},
      {"collective", "Apply fitness communication to a population roster",
       evonat::run_collective},
      {"survival", "Compare episode survival of a fit vs a broken agent",
       evonat::run_survival},
  };

  CommonFlags flags[std::size(commands)];
  int selected = -1;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* cmd = app.add_subcommand(commands[i].name, commands[i].help);
    add_common_flags(cmd, &flags[i]);
    cmd->callback([&selected, i] { selected = static_cast<int>(i); });
  }

  CLI11_PARSE(app, argc, argv);
  return run_command(flags[selected], commands[selected].fn);
}
