// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#include "evonat/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <numeric>
#include <fstream>
#include <sstream>
#include <utility>

#include "evonat/fitness.hpp"
#include "evonat/infotheory.hpp"
#include "evonat/parallel.hpp"
#include "evonat/rng.hpp"
#include "evonat/stats.hpp"
#include "evonat/training.hpp"

namespace evonat {

namespace {

Eigen::VectorXd vector_from(const Json& j) {
  std::vector<double> v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<int>(v.size()));
}

Json vector_to(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open '" + path.string() + "' for writing");
  }
  out << text;
}

std::string join_csv(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

// Starting parameters for a family when the config does not pin them.
TrainableParams initial_params(const Architecture& arch,
                               std::span<const LabeledSample> samples,
                               std::uint64_t seed) {
  switch (arch.family) {
    case ModelFamily::ThresholdUnit:
      return init_threshold_params(arch, samples);
    case ModelFamily::Tabular: {
      double lo = samples.front().x(0), hi = lo;
      for (const auto& s : samples) {
        lo = std::min(lo, s.x(0));
        hi = std::max(hi, s.x(0));
      }
      if (!(hi > lo)) hi = lo + 1.0;
      Eigen::VectorXd p(2 + arch.units_per_layer[0]);
      p(0) = lo;
      p(1) = hi;
      for (int b = 0; b < arch.units_per_layer[0]; ++b) {
        p(2 + b) = static_cast<double>(b % arch.latent_dim);
      }
      return TrainableParams{std::move(p)};
    }
    case ModelFamily::MultiLayer:
      return init_multilayer_params(arch, seed);
  }
  throw ConfigError("initial_params: unknown model family");
}

EncoderModel build_model(const RunConfig& config,
                         std::span<const LabeledSample> samples,
                         int label_count, std::uint64_t init_seed) {
  EncoderModel m;
  m.arch = config.model_arch;
  m.noise_rate = config.model_noise_rate;
  if (config.model_params) {
    m.params.values = *config.model_params;
  } else {
    m.params = initial_params(m.arch, samples, init_seed);
  }
  if (m.arch.family == ModelFamily::MultiLayer) {
    m.prototypes =
        default_prototypes(std::max(2, label_count), m.arch.latent_dim);
  }
  validate(m);
  return m;
}

void require_feasible(const Architecture& arch, const ConstraintSet& cs) {
  const FeasibilityReport rep = feasible(arch, cs);
  if (rep.ok) return;
  std::string msg = "architecture violates constraints:";
  for (const std::string& name : rep.violations) msg += " " + name;
  throw InfeasibleArchitecture(msg);
}

Json arch_brief(const Architecture& arch) {
  Json j = arch_to_json(arch);
  j["units"] = structural_units(arch);
  return j;
}

// Mean edit distance between successive accepted child architectures: the
// empirical step size of the adaptation chain. Pairs whose architectures are
// not mutually reachable by unit edits are skipped.
std::optional<double> mean_accepted_step(
    const std::vector<AdaptationRecord>& records, int* pairs_out) {
  std::vector<const Architecture*> chain;
  for (const auto& rec : records) {
    if (rec.accepted) chain.push_back(&rec.child_arch);
  }
  double total = 0.0;
  int pairs = 0;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    try {
      total += edit_distance(*chain[i - 1], *chain[i]);
      ++pairs;
    } catch (const NotIncremental&) {
    }
  }
  if (pairs_out) *pairs_out = pairs;
  if (pairs == 0) return std::nullopt;
  return total / pairs;
}

void log_trajectory(const EvolutionTrajectory& traj, std::optional<int> stage,
                    RunLogger& log) {
  for (const GenerationSummary& g : traj.generations) {
    Json e;
    e["event"] = "generation";
    if (stage) e["stage"] = *stage;
    e["generation"] = g.generation;
    e["best_F"] = g.best_fitness;
    e["mean_F"] = g.mean_fitness;
    e["best_units"] = structural_units(g.best_arch);
    e["best_energy"] = resource_costs(g.best_arch).energy_rho;
    e["accepted_variations"] = g.accepted_variations;
    e["population_size"] = g.population_size;
    log.event(std::move(e));

    std::vector<std::string> row;
    if (stage) row.push_back(std::to_string(*stage));
    row.push_back(std::to_string(g.generation));
    row.push_back(csv_number(g.best_fitness));
    row.push_back(csv_number(g.mean_fitness));
    row.push_back(std::to_string(structural_units(g.best_arch)));
    row.push_back(csv_number(resource_costs(g.best_arch).energy_rho));
    log.summary_row(row);
  }
  for (const AdaptationRecord& rec : traj.records) {
    Json e;
    e["event"] = "adaptation";
    if (stage) e["stage"] = *stage;
    e["kind"] = variation_kind_name(rec.op.kind);
    e["parent_lineage"] = rec.parent_lineage;
    e["child_lineage"] = rec.child_lineage;
    e["parent_units"] = structural_units(rec.parent_arch);
    e["child_units"] = structural_units(rec.child_arch);
    e["parent_F"] = rec.parent_fitness;
    e["child_F"] = rec.child_fitness;
    e["delta_F"] = rec.delta_f;
    e["delta_H"] = rec.delta_h;
    e["edit_size"] = rec.edit_size;
    if (rec.delta_h > 0.0) {
      e["G_H"] = rec.g_h;
      e["gain_per_energy"] = rec.gain_per_energy;
    }
    e["trained"] = rec.trained;
    e["accepted"] = rec.accepted;
    log.event(std::move(e));
  }
}

}  // namespace

std::string csv_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

// ------------------------------ RunConfig ---------------------------------

RunConfig run_config_from_json(const Json& j) {
  try {
    RunConfig c;
    c.schema_version = j.value("schema_version", 1);
    if (c.schema_version != 1) {
      throw ConfigError("config: unsupported schema_version " +
                        std::to_string(c.schema_version));
    }
    c.seed = j.value("seed", std::uint64_t{0});
    c.workers = j.value("workers", 1);
    c.out_dir = j.value("out_dir", std::string{});
    c.format = j.value("format", std::string{"csv"});
    if (c.format != "csv" && c.format != "jsonl") {
      throw ConfigError("config: format must be 'csv' or 'jsonl'");
    }
    if (c.workers < 1) throw ConfigError("config: workers must be >= 1");

    if (j.contains("world")) c.world = world_from_json(j["world"]);
    if (j.contains("model")) {
      const Json& m = j["model"];
      c.model_arch = arch_from_json(m);
      if (m.contains("params")) {
        Eigen::VectorXd p = vector_from(m["params"]);
        if (p.size() != param_count(c.model_arch)) {
          throw ConfigError("config: model params length " +
                            std::to_string(p.size()) + " != expected " +
                            std::to_string(param_count(c.model_arch)));
        }
        c.model_params = std::move(p);
      }
      c.model_noise_rate = m.value("noise_rate", 0.0);
    }
    if (j.contains("constraints")) {
      c.constraints = constraints_from_json(j["constraints"]);
    }
    if (j.contains("training")) c.training = budget_from_json(j["training"]);
    if (j.contains("fitness")) {
      const Json& f = j["fitness"];
      c.fitness_samples = f.value("samples", 2000);
      c.reference_correctness = f.value("reference_correctness", 0.9);
      if (c.fitness_samples < 1) {
        throw ConfigError("config: fitness samples must be >= 1");
      }
    }

    if (j.contains("evolution")) {
      Json ev = j["evolution"];
      if (!ev.contains("initial_arch")) {
        ev["initial_arch"] = arch_to_json(c.model_arch);
      }
      if (!ev.contains("model_noise_rate")) {
        ev["model_noise_rate"] = c.model_noise_rate;
      }
      c.evolution = evolution_from_json(ev);
    } else {
      c.evolution.initial_arch = c.model_arch;
      c.evolution.model_noise_rate = c.model_noise_rate;
    }
    c.generations = j.value("generations", 30);
    if (j.contains("stages")) {
      for (const Json& s : j["stages"]) {
        c.stages.push_back(world_from_json(s));
      }
    }

    if (j.contains("conceptualize")) {
      const Json& cc = j["conceptualize"];
      c.conceptualize.ensemble = cc.value("ensemble", 20);
      c.conceptualize.latent_dim = cc.value("latent_dim", 2);
      c.conceptualize.grid_resolution = cc.value("grid_resolution", 32);
      c.conceptualize.mixed_threshold = cc.value("mixed_threshold", 0.25);
      c.conceptualize.samples = cc.value("samples", 1000);
      c.conceptualize.budget_min = cc.value("budget_min", 400);
      c.conceptualize.budget_max = cc.value("budget_max", 6000);
      c.conceptualize.step_scale = cc.value("step_scale", 0.1);
      c.conceptualize.beta = cc.value("beta", 2.0);
      if (c.conceptualize.ensemble < 1 || c.conceptualize.samples < 2 ||
          c.conceptualize.grid_resolution < 2 ||
          c.conceptualize.latent_dim < 1 || c.conceptualize.budget_min < 1 ||
          c.conceptualize.budget_max < c.conceptualize.budget_min ||
          c.conceptualize.beta <= 0.0) {
        throw ConfigError("config: invalid conceptualize settings");
      }
    }

    if (j.contains("collective")) {
      c.roster = roster_from_json(j["collective"]);
      c.tau = j["collective"].value("tau", 1.0);
    }

    if (j.contains("survival")) {
      const Json& sv = j["survival"];
      c.survival.episodes = sv.value("episodes", 100);
      c.survival.max_steps = sv.value("max_steps", 200);
      c.survival.rules.endurance = sv.value("endurance", 3);
      c.survival.rules.move_scale = sv.value("move_scale", 0.5);
      c.survival.broken_noise_rate = sv.value("broken_noise_rate", 1.0);
      if (c.survival.episodes < 1 || c.survival.max_steps < 0 ||
          c.survival.rules.endurance < 1 ||
          c.survival.rules.move_scale <= 0.0) {
        throw ConfigError("config: invalid survival settings");
      }
    }
    return c;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string{"config document: "} + e.what());
  }
}

Json run_config_to_json(const RunConfig& c) {
  Json j;
  j["schema_version"] = c.schema_version;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["format"] = c.format;
  if (!c.out_dir.empty()) j["out_dir"] = c.out_dir;
  j["world"] = world_to_json(c.world);
  Json m = arch_to_json(c.model_arch);
  if (c.model_params) m["params"] = vector_to(*c.model_params);
  m["noise_rate"] = c.model_noise_rate;
  j["model"] = std::move(m);
  j["constraints"] = constraints_to_json(c.constraints);
  j["training"] = budget_to_json(c.training);
  j["fitness"] = Json{{"samples", c.fitness_samples},
                      {"reference_correctness", c.reference_correctness}};
  j["evolution"] = evolution_to_json(c.evolution);
  j["generations"] = c.generations;
  if (!c.stages.empty()) {
    Json stages = Json::array();
    for (const World& w : c.stages) stages.push_back(world_to_json(w));
    j["stages"] = std::move(stages);
  }
  j["conceptualize"] =
      Json{{"ensemble", c.conceptualize.ensemble},
           {"latent_dim", c.conceptualize.latent_dim},
           {"grid_resolution", c.conceptualize.grid_resolution},
           {"mixed_threshold", c.conceptualize.mixed_threshold},
           {"samples", c.conceptualize.samples},
           {"budget_min", c.conceptualize.budget_min},
           {"budget_max", c.conceptualize.budget_max},
           {"step_scale", c.conceptualize.step_scale},
           {"beta", c.conceptualize.beta}};
  if (!c.roster.values.empty()) {
    Json col = roster_to_json(c.roster);
    col["tau"] = c.tau;
    j["collective"] = std::move(col);
  }
  j["survival"] = Json{{"episodes", c.survival.episodes},
                       {"max_steps", c.survival.max_steps},
                       {"endurance", c.survival.rules.endurance},
                       {"move_scale", c.survival.rules.move_scale},
                       {"broken_noise_rate", c.survival.broken_noise_rate}};
  return j;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_config_from_json(parse_json(buf.str()));
}

// ------------------------------ RunLogger ---------------------------------

RunLogger::RunLogger(std::string out_dir, const Json& config_snapshot)
    : out_dir_(std::move(out_dir)) {
  if (out_dir_.empty()) return;
  std::filesystem::create_directories(out_dir_);
  write_text_file(std::filesystem::path(out_dir_) / "config.json",
                  config_snapshot.dump(2) + "\n");
}

void RunLogger::event(Json e) {
  if (!enabled()) return;
  event_lines_.push_back(e.dump());
}

void RunLogger::summary_header(std::vector<std::string> columns) {
  if (!enabled()) return;
  summary_lines_.clear();
  summary_lines_.push_back(join_csv(columns));
}

void RunLogger::summary_row(const std::vector<std::string>& cells) {
  if (!enabled()) return;
  summary_lines_.push_back(join_csv(cells));
}

void RunLogger::finalize() {
  if (!enabled()) return;
  const std::filesystem::path dir(out_dir_);
  std::string events;
  for (const std::string& line : event_lines_) {
    events += line;
    events += '\n';
  }
  write_text_file(dir / "events.jsonl", events);
  std::string summary;
  for (const std::string& line : summary_lines_) {
    summary += line;
    summary += '\n';
  }
  write_text_file(dir / "summary.csv", summary);

  // Wall-clock metadata lives apart from the data files so reruns stay
  // byte-identical where it matters.
  char stamp[32];
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  Json meta;
  meta["finished_at_utc"] = stamp;
  meta["schema_version"] = 1;
  write_text_file(dir / "meta.json", meta.dump(2) + "\n");
}

// ------------------------------ commands ----------------------------------

Json run_fitness(const RunConfig& config, RunLogger& log) {
  validate(config.model_arch);
  validate(config.world);
  require_feasible(config.model_arch, config.constraints);

  const auto raw = sample_world(config.world, config.fitness_samples,
                                derive_seed(config.seed, "fitness_sample"));
  const auto samples = config.model_arch.preprocessing
                           ? preprocess_samples(config.world, raw)
                           : raw;

  EncoderModel model =
      build_model(config, samples, world_label_count(config.world),
                  derive_seed(config.seed, "init"));
  TrainBudget budget = config.training;
  budget.seed = derive_seed(config.seed, "train");
  const TrainResult tr = train_local_search(
      model, samples, Objective::information_fitness, budget);
  const EncoderModel trained = with_params(model, tr.params);
  const auto [joint, fit] =
      fitness_of_model(trained, samples, derive_seed(config.seed, "eval"));

  const ResourceCost rc = resource_costs(config.model_arch);
  const double ceiling = entropy(world_priors(config.world));

  Json report;
  report["command"] = "fitness";
  report["fitness_bits"] = fit.bits;
  report["entropy_ceiling_bits"] = ceiling;
  report["feasible"] = true;
  report["memory_d"] = rc.memory_d;
  report["compute_c"] = rc.compute_c;
  report["energy_rho"] = rc.energy_rho;
  report["train_evaluations"] = tr.evaluations_used;
  report["train_initial_bits"] = tr.fitness_trace.front();
  Json table = Json::array();
  for (int r = 0; r < joint.table().rows(); ++r) {
    Json row = Json::array();
    for (int cidx = 0; cidx < joint.table().cols(); ++cidx) {
      row.push_back(joint.table()(r, cidx));
    }
    table.push_back(std::move(row));
  }
  report["joint"] = std::move(table);

  // Reference ladder for binary-label worlds: the entropy ceiling of a
  // perfect observer, a partially informed observer at the configured
  // correctness, and an uninformed observer (independent joint).
  if (world_label_count(config.world) == 2) {
    const ProbabilityVector priors = world_priors(config.world);
    const double f_p = entropy(priors);
    const double f_1 =
        mutual_information(two_state_joint(priors, config.reference_correctness))
            .bits;
    const double f_2 = mutual_information(two_state_joint(priors, 0.5)).bits;
    Json ref;
    ref["correctness"] = config.reference_correctness;
    ref["F_p"] = f_p;
    ref["F_1"] = f_1;
    ref["F_2"] = f_2;
    ref["ordering_ok"] = (f_p > f_1) && (f_1 > f_2);
    report["reference"] = std::move(ref);
  }

  Json e = report;
  e["event"] = "fitness";
  e.erase("joint");
  log.event(std::move(e));
  Json je;
  je["event"] = "joint";
  je["table"] = report["joint"];
  log.event(std::move(je));

  log.summary_header({"metric", "value"});
  log.summary_row({"fitness_bits", csv_number(fit.bits)});
  log.summary_row({"entropy_ceiling_bits", csv_number(ceiling)});
  log.summary_row({"memory_d", csv_number(rc.memory_d)});
  log.summary_row({"compute_c", csv_number(rc.compute_c)});
  log.summary_row({"energy_rho", csv_number(rc.energy_rho)});
  log.summary_row({"train_evaluations", std::to_string(tr.evaluations_used)});
  if (report.contains("reference")) {
    log.summary_row({"reference_F_p", csv_number(report["reference"]["F_p"])});
    log.summary_row({"reference_F_1", csv_number(report["reference"]["F_1"])});
    log.summary_row({"reference_F_2", csv_number(report["reference"]["F_2"])});
    log.summary_row({"reference_ordering_ok",
                     report["reference"]["ordering_ok"].get<bool>() ? "1"
                                                                    : "0"});
  }

  if (log.enabled()) {
    std::ostringstream joint_csv;
    write_joint_csv(joint, joint_csv);
    write_text_file(std::filesystem::path(log.out_dir()) / "joint.csv",
                    joint_csv.str());
    write_text_file(std::filesystem::path(log.out_dir()) / "samples.csv",
                    write_samples_csv(samples));
  }
  return report;
}

Json run_evolve(const RunConfig& config, RunLogger& log) {
  EvolutionConfig ec = config.evolution;
  ec.workers = config.workers;

  std::vector<EvolutionTrajectory> trajectories;
  const bool staged = !config.stages.empty();
  if (staged) {
    trajectories = run_staged_evolution(ec, config.stages, config.generations,
                                        config.constraints, config.seed);
    log.summary_header(
        {"stage", "generation", "best_F", "mean_F", "best_units",
         "best_energy"});
    for (std::size_t s = 0; s < trajectories.size(); ++s) {
      log_trajectory(trajectories[s], static_cast<int>(s), log);
    }
  } else {
    trajectories.push_back(run_evolution(ec, config.world, config.generations,
                                         config.constraints, config.seed));
    log.summary_header(
        {"generation", "best_F", "mean_F", "best_units", "best_energy"});
    log_trajectory(trajectories.front(), std::nullopt, log);
  }

  std::vector<AdaptationRecord> all_records;
  int accepted_total = 0;
  for (const auto& traj : trajectories) {
    for (const auto& rec : traj.records) {
      all_records.push_back(rec);
      if (rec.accepted) ++accepted_total;
    }
  }
  int step_pairs = 0;
  const std::optional<double> l_ex =
      mean_accepted_step(all_records, &step_pairs);

  Json report;
  report["command"] = "evolve";
  report["staged"] = staged;
  report["generations_per_stage"] = config.generations;
  report["accepted_variations"] = accepted_total;
  report["records_total"] = static_cast<int>(all_records.size());
  if (l_ex) {
    report["mean_accepted_step"] = *l_ex;
    report["mean_accepted_step_pairs"] = step_pairs;
  }
  Json finals = Json::array();
  for (const auto& traj : trajectories) {
    const GenerationSummary& last = traj.generations.back();
    Json f;
    f["best_F"] = last.best_fitness;
    f["mean_F"] = last.mean_fitness;
    f["best_arch"] = arch_brief(last.best_arch);
    f["front_runner"] =
        arch_brief(traj.final_population.individuals.front().arch);
    finals.push_back(std::move(f));
  }
  report["stage_finals"] = std::move(finals);
  report["final_best_F"] =
      trajectories.back().generations.back().best_fitness;
  report["final_best_units"] =
      structural_units(trajectories.back().generations.back().best_arch);

  if (l_ex) {
    Json e;
    e["event"] = "mean_accepted_step";
    e["value"] = *l_ex;
    e["pairs"] = step_pairs;
    log.event(std::move(e));
  }
  return report;
}

Json run_conceptualize(const RunConfig& config, RunLogger& log) {
  validate(config.world);
  const ConceptualizeSettings& cs = config.conceptualize;
  const auto samples = sample_world(config.world, cs.samples,
                                    derive_seed(config.seed, "concept_sample"));
  if (max_label(samples) == 0) {
    throw DegenerateInput(
        "conceptualize: the sampled world produced a single class");
  }

  Architecture arch;
  arch.family = ModelFamily::MultiLayer;
  arch.units_per_layer = {};
  arch.latent_dim = cs.latent_dim;
  arch.input_dim = world_input_dim(config.world, false);
  validate(arch);

  const int n = cs.ensemble;
  struct MemberResult {
    std::uint64_t train_seed = 0;
    int budget = 0;
    double accuracy = 0.0;
    double mu_x = 0.0;
    bool bound_ok = false;
    std::string latent_csv;
  };
  std::vector<MemberResult> members(n);

  parallel_for(static_cast<std::size_t>(n), config.workers,
               [&](std::size_t idx) {
    const int i = static_cast<int>(idx);
    const std::uint64_t stream = derive_seed(
        config.seed, {static_cast<std::uint64_t>(i), label_hash("member")});
    // Spread the training budget across members so reconstruction quality
    // varies; the correlation needs contrast to be measurable.
    const int budget_steps =
        n == 1 ? cs.budget_max
               : cs.budget_min + static_cast<int>(
                                     (static_cast<long long>(cs.budget_max -
                                                             cs.budget_min) *
                                      i) /
                                     (n - 1));
    GenerativeModel g;
    g.encoder.arch = arch;
    g.encoder.params = init_multilayer_params(arch, derive_seed(stream, "init"));
    g.encoder.prototypes = default_prototypes(
        std::max(2, world_label_count(config.world)), arch.latent_dim);
    Rng dec_rng(derive_seed(stream, "decoder_init"));
    Eigen::VectorXd dec(decoder_param_count(arch));
    for (int k = 0; k < dec.size(); ++k) dec(k) = dec_rng.uniform(-0.5, 0.5);
    g.decoder_params.values = std::move(dec);

    TrainBudget budget{budget_steps, cs.step_scale, derive_seed(stream, "train")};
    const TrainResult tr = train_local_search(
        g, samples, Objective::generative_accuracy, budget);
    const GenerativeModel trained = with_params(g, tr.params);

    MemberResult& out = members[idx];
    out.train_seed = budget.seed;
    out.budget = budget_steps;
    out.accuracy = generative_accuracy(trained, samples);
    const auto latents = latent_map(trained.encoder, samples);
    const IntermixRegion region =
        intermix_region(latents, cs.grid_resolution, cs.mixed_threshold);
    out.mu_x = region.mu_x;
    out.bound_ok = lemma_bound_check(region.mu_x, out.accuracy, cs.beta);
    if (i == 0) out.latent_csv = write_latent_csv(latents);
  });

  log.summary_header({"member", "seed", "budget", "accuracy", "mu_x",
                      "bound_ok"});
  std::vector<double> accuracies, mu_xs;
  int bound_failures = 0;
  for (int i = 0; i < n; ++i) {
    const MemberResult& m = members[i];
    accuracies.push_back(m.accuracy);
    mu_xs.push_back(m.mu_x);
    if (!m.bound_ok) ++bound_failures;
    Json e;
    e["event"] = "member";
    e["member"] = i;
    e["seed"] = m.train_seed;
    e["budget"] = m.budget;
    e["accuracy"] = m.accuracy;
    e["mu_x"] = m.mu_x;
    e["bound_ok"] = m.bound_ok;
    log.event(std::move(e));
    log.summary_row({std::to_string(i), std::to_string(m.train_seed),
                     std::to_string(m.budget), csv_number(m.accuracy),
                     csv_number(m.mu_x), m.bound_ok ? "1" : "0"});
  }

  // The correlation is undefined when every member lands on the same
  // accuracy or the same intermix measure (e.g. a world so separable that
  // mu_x is 0 across the whole ensemble); report it as absent rather than
  // failing the run.
  std::optional<double> rho;
  try {
    rho = spearman_correlation(accuracies, mu_xs);
  } catch (const DegenerateInput&) {
  }
  const double mean_acc =
      std::accumulate(accuracies.begin(), accuracies.end(), 0.0) / n;
  const double mean_mu =
      std::accumulate(mu_xs.begin(), mu_xs.end(), 0.0) / n;

  Json report;
  report["command"] = "conceptualize";
  report["ensemble"] = n;
  if (rho) report["spearman_accuracy_mu_x"] = *rho;
  report["mean_accuracy"] = mean_acc;
  report["mean_mu_x"] = mean_mu;
  report["bound_failures"] = bound_failures;
  report["beta"] = cs.beta;

  Json e;
  e["event"] = "ensemble";
  if (rho) e["spearman_accuracy_mu_x"] = *rho;
  e["mean_accuracy"] = mean_acc;
  e["mean_mu_x"] = mean_mu;
  e["bound_failures"] = bound_failures;
  log.event(std::move(e));

  if (log.enabled() && !members.front().latent_csv.empty()) {
    write_text_file(std::filesystem::path(log.out_dir()) / "latents.csv",
                    members.front().latent_csv);
  }
  return report;
}

Json run_collective(const RunConfig& config, RunLogger& log) {
  if (config.roster.values.empty()) {
    throw ConfigError(
        "collective: config needs a 'collective' section with values");
  }
  validate(config.roster);
  const FitnessRoster& before = config.roster;
  const FitnessRoster after = communicate(before, config.tau);
  const double total_before = total_fitness(before);
  const double total_after = total_fitness(after);
  const double per_individual = communication_gain(before, after);
  const double f_max =
      *std::max_element(before.values.begin(), before.values.end());
  const int n = static_cast<int>(before.values.size());

  Json report;
  report["command"] = "collective";
  report["n"] = n;
  report["tau"] = config.tau;
  report["f_max"] = f_max;
  report["total_before"] = total_before;
  report["total_after"] = total_after;
  report["total_gain"] = total_after - total_before;
  report["gain_per_individual"] = per_individual;

  Json eb;
  eb["event"] = "roster_before";
  eb["values"] = before.values;
  log.event(std::move(eb));
  Json ea;
  ea["event"] = "roster_after";
  ea["values"] = after.values;
  log.event(std::move(ea));
  Json eg;
  eg["event"] = "communication_gain";
  eg["total_gain"] = total_after - total_before;
  eg["gain_per_individual"] = per_individual;
  log.event(std::move(eg));

  log.summary_header({"metric", "value"});
  log.summary_row({"n", std::to_string(n)});
  log.summary_row({"tau", csv_number(config.tau)});
  log.summary_row({"f_max", csv_number(f_max)});
  log.summary_row({"total_before", csv_number(total_before)});
  log.summary_row({"total_after", csv_number(total_after)});
  log.summary_row({"total_gain", csv_number(total_after - total_before)});
  log.summary_row({"gain_per_individual", csv_number(per_individual)});
  return report;
}

Json run_survival(const RunConfig& config, RunLogger& log) {
  validate(config.world);
  validate(config.model_arch);
  if (config.world.kind != WorldKind::TwoState) {
    throw ConfigError("survival: the world must be two_state");
  }
  if (config.model_arch.family != ModelFamily::ThresholdUnit ||
      config.model_arch.units_per_layer[0] != 1) {
    throw ConfigError(
        "survival: the policy model must be a single threshold unit");
  }

  // The "fit" agent gets the best interval for the world; the "broken" agent
  // is the same model with its responses scrambled by unit-flip noise. The
  // policy holds position while the unit is raised, so the unit must raise
  // on habitable ground — fit it against the inverted labels (habitable is
  // label 0, and the exact fit targets label 1).
  EncoderModel fit;
  fit.arch = config.model_arch;
  if (config.model_params) {
    fit.params.values = *config.model_params;
  } else {
    auto samples = sample_world(config.world, 2000,
                                derive_seed(config.seed, "survival_fit"));
    for (auto& s : samples) s.label = s.label == 0 ? 1 : 0;
    fit.params = fit_threshold_exact(samples);
  }
  validate(fit);
  EncoderModel broken = fit;
  broken.noise_rate = config.survival.broken_noise_rate;

  const int episodes = config.survival.episodes;
  struct EpisodeOutcome {
    int fit_steps = 0;
    bool fit_alive = false;
    int broken_steps = 0;
    bool broken_alive = false;
  };
  std::vector<EpisodeOutcome> outcomes(episodes);
  parallel_for(static_cast<std::size_t>(episodes), config.workers,
               [&](std::size_t idx) {
    const auto e = static_cast<std::uint64_t>(idx);
    const SurvivalOutcome f = survival_sim(
        config.world, fit, config.survival.max_steps,
        derive_seed(config.seed, {e, label_hash("episode_fit")}),
        config.survival.rules);
    const SurvivalOutcome b = survival_sim(
        config.world, broken, config.survival.max_steps,
        derive_seed(config.seed, {e, label_hash("episode_broken")}),
        config.survival.rules);
    outcomes[idx] = {f.steps_survived, f.alive_at_end, b.steps_survived,
                     b.alive_at_end};
  });

  double fit_mean = 0.0, broken_mean = 0.0;
  int fit_alive = 0, broken_alive = 0;
  for (int i = 0; i < episodes; ++i) {
    const EpisodeOutcome& o = outcomes[i];
    fit_mean += o.fit_steps;
    broken_mean += o.broken_steps;
    fit_alive += o.fit_alive ? 1 : 0;
    broken_alive += o.broken_alive ? 1 : 0;
    Json e;
    e["event"] = "episode";
    e["episode"] = i;
    e["fit_steps"] = o.fit_steps;
    e["fit_alive"] = o.fit_alive;
    e["broken_steps"] = o.broken_steps;
    e["broken_alive"] = o.broken_alive;
    log.event(std::move(e));
  }
  fit_mean /= episodes;
  broken_mean /= episodes;

  Json report;
  report["command"] = "survival";
  report["episodes"] = episodes;
  report["max_steps"] = config.survival.max_steps;
  report["fit_mean_steps"] = fit_mean;
  report["broken_mean_steps"] = broken_mean;
  report["fit_alive_fraction"] = static_cast<double>(fit_alive) / episodes;
  report["broken_alive_fraction"] =
      static_cast<double>(broken_alive) / episodes;
  if (broken_mean > 0.0) {
    report["survival_ratio"] = fit_mean / broken_mean;
  }

  Json e;
  e["event"] = "survival_summary";
  e["fit_mean_steps"] = fit_mean;
  e["broken_mean_steps"] = broken_mean;
  if (broken_mean > 0.0) e["survival_ratio"] = fit_mean / broken_mean;
  log.event(std::move(e));

  log.summary_header({"metric", "value"});
  log.summary_row({"episodes", std::to_string(episodes)});
  log.summary_row({"max_steps", std::to_string(config.survival.max_steps)});
  log.summary_row({"fit_mean_steps", csv_number(fit_mean)});
  log.summary_row({"broken_mean_steps", csv_number(broken_mean)});
  log.summary_row(
      {"fit_alive_fraction", csv_number(static_cast<double>(fit_alive) / episodes)});
  log.summary_row({"broken_alive_fraction",
                   csv_number(static_cast<double>(broken_alive) / episodes)});
  if (broken_mean > 0.0) {
    log.summary_row({"survival_ratio", csv_number(fit_mean / broken_mean)});
  }
  return report;
}

// ------------------------------ reporting ---------------------------------

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void flatten(const Json& node, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
    }
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      flatten(node[i], prefix + "." + std::to_string(i), rows);
    }
  } else if (node.is_boolean()) {
    rows.emplace_back(prefix, node.get<bool>() ? "true" : "false");
  } else if (node.is_number_float()) {
    rows.emplace_back(prefix, csv_number(node.get<double>()));
  } else if (node.is_number()) {
    rows.emplace_back(prefix, node.dump());
  } else if (node.is_string()) {
    rows.emplace_back(prefix, csv_escape(node.get<std::string>()));
  } else {
    rows.emplace_back(prefix, node.dump());
  }
}

}  // namespace

std::string render_report(const Json& report, const std::string& format) {
  if (format == "jsonl") return report.dump() + "\n";
  if (format != "csv") {
    throw ConfigError("format must be 'csv' or 'jsonl', got '" + format + "'");
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::string out = "metric,value\n";
  for (const auto& [key, value] : rows) {
    out += key;
    out += ',';
    out += value;
    out += '\n';
  }
  return out;
}

int exit_code_for_current_exception() {
  try {
    throw;
  } catch (const ConfigError&) {
    return 2;
  } catch (const ShapeError&) {
    return 2;
  } catch (const NotIncremental&) {
    return 2;
  } catch (const InfeasibleArchitecture&) {
    return 3;
  } catch (const DegenerateInput&) {
    return 3;
  } catch (const EmptyEvidence&) {
    return 3;
  } catch (const NumericalError&) {
    return 4;
  } catch (...) {
    return 1;
  }
}

}  // namespace evonat
