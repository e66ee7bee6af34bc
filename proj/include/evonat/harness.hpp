// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Run configuration, persistent run logs, and the five experiment commands
// behind the CLI.
//
// A run directory is self-describing: config.json (the exact settings, written
// before any computation), events.jsonl (one JSON object per line, keys in
// alphabetical order), summary.csv (the headline table), and meta.json
// (timestamps and versions — the only file allowed to differ between
// identical runs). Every random draw descends from the root seed through
// labeled derivations, so a rerun with the same config and seed reproduces
// events.jsonl and summary.csv byte for byte.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evonat/collective.hpp"
#include "evonat/constraints.hpp"
#include "evonat/evolution.hpp"
#include "evonat/serialization.hpp"
#include "evonat/worlds.hpp"

namespace evonat {

struct ConceptualizeSettings {
  int ensemble = 20;
  int latent_dim = 2;
  int grid_resolution = 32;
  double mixed_threshold = 0.25;
  int samples = 1000;
  // Per-member budgets interpolate between these bounds so reconstruction
  // quality varies enough for a correlation to be measurable.
  int budget_min = 400;
  int budget_max = 6000;
  double step_scale = 0.1;
  double beta = 2.0;
};

struct SurvivalSettings {
  int episodes = 100;
  int max_steps = 200;
  SurvivalRules rules;
  double broken_noise_rate = 1.0;  // the contrast model's flip probability
};

struct RunConfig {
  int schema_version = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out_dir;  // empty = no files, report only
  std::string format = "csv";  // stdout rendering: "csv" or "jsonl"

  World world;
  Architecture model_arch;
  std::optional<Eigen::VectorXd> model_params;  // absent = family initializer
  double model_noise_rate = 0.0;

  ConstraintSet constraints{500.0, 50.0, 100.0, std::nullopt};
  TrainBudget training{2000, 0.25, 0};
  int fitness_samples = 2000;
  double reference_correctness = 0.9;

  EvolutionConfig evolution;
  int generations = 30;
  std::vector<World> stages;  // non-empty = staged evolution

  ConceptualizeSettings conceptualize;

  FitnessRoster roster;
  double tau = 1.0;

  SurvivalSettings survival;
};

RunConfig run_config_from_json(const Json& j);
Json run_config_to_json(const RunConfig& config);
// Reads and parses the file; ConfigError on missing or malformed input.
RunConfig load_run_config(const std::string& path);

// Collects events and summary rows in memory and persists them on finalize.
// With an empty directory name the logger is a no-op sink.
class RunLogger {
 public:
  RunLogger() = default;
  // Creates the directory and writes config.json immediately.
  RunLogger(std::string out_dir, const Json& config_snapshot);

  void event(Json e);
  void summary_header(std::vector<std::string> columns);
  void summary_row(const std::vector<std::string>& cells);
  // Writes events.jsonl, summary.csv, and meta.json.
  void finalize();

  bool enabled() const { return !out_dir_.empty(); }
  const std::string& out_dir() const { return out_dir_; }

 private:
  std::string out_dir_;
  std::vector<std::string> event_lines_;
  std::vector<std::string> summary_lines_;
};

// Formats a double for CSV cells: 12 significant digits, locale-free.
std::string csv_number(double value);

// Each command validates its slice of the config, runs the experiment,
// logs events/summary rows, and returns the report document the CLI prints.
Json run_fitness(const RunConfig& config, RunLogger& log);
Json run_evolve(const RunConfig& config, RunLogger& log);
Json run_conceptualize(const RunConfig& config, RunLogger& log);
Json run_collective(const RunConfig& config, RunLogger& log);
Json run_survival(const RunConfig& config, RunLogger& log);

// Renders a report for stdout: "jsonl" dumps one canonical JSON line,
// "csv" renders a flat key,value listing.
std::string render_report(const Json& report, const std::string& format);

// Maps library errors onto process exit codes: 0 success, 2 configuration
// or shape problems, 3 infeasible or degenerate inputs, 4 numerical
// failures, 1 anything else.
int exit_code_for_current_exception();

}  // namespace evonat
