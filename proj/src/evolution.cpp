// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#include "evonat/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "evonat/fitness.hpp"
#include "evonat/parallel.hpp"
#include "evonat/rng.hpp"

namespace evonat {

namespace {

const char* kind_name(VariationKind kind) {
  switch (kind) {
    case VariationKind::add_unit: return "add_unit";
    case VariationKind::remove_unit: return "remove_unit";
    case VariationKind::add_layer: return "add_layer";
    case VariationKind::widen_layer: return "widen_layer";
    case VariationKind::change_latent_dim: return "change_latent_dim";
    case VariationKind::add_preprocessing: return "add_preprocessing";
  }
  return "unknown";
}

bool latent_is_free(ModelFamily family) {
  // Threshold latent width is the unit count, so it never contributes an
  // independent edit.
  return family != ModelFamily::ThresholdUnit;
}

// Bucketed comparison: true when `a` should be selected ahead of `b`.
bool ranks_ahead(const Individual& a, const Individual& b,
                 double noise_margin) {
  const long long bucket_a =
      static_cast<long long>(std::floor(a.fitness.bits / noise_margin));
  const long long bucket_b =
      static_cast<long long>(std::floor(b.fitness.bits / noise_margin));
  if (bucket_a != bucket_b) return bucket_a > bucket_b;
  if (a.energy != b.energy) return a.energy < b.energy;
  return a.lineage_id < b.lineage_id;
}

// Exact comparison used to identify the retained elite.
bool exactly_better(const Individual& a, const Individual& b) {
  if (a.fitness.bits != b.fitness.bits) return a.fitness.bits > b.fitness.bits;
  if (a.energy != b.energy) return a.energy < b.energy;
  return a.lineage_id < b.lineage_id;
}

std::span<const LabeledSample> samples_for(
    const Architecture& arch, const std::vector<LabeledSample>& raw,
    const std::vector<LabeledSample>& preprocessed) {
  if (!arch.preprocessing) return raw;
  if (preprocessed.empty()) {
    throw ConfigError(
        "evolution: architecture expects preprocessed observations but the "
        "world has no preprocessing map");
  }
  return preprocessed;
}

TrainableParams fresh_params(const Architecture& arch, const World& world,
                             std::span<const LabeledSample> samples,
                             std::uint64_t seed) {
  switch (arch.family) {
    case ModelFamily::ThresholdUnit:
      return init_threshold_params(arch, samples);
    case ModelFamily::Tabular: {
      const auto [lo, hi] = world_domain(world);
      const int bins = arch.units_per_layer.at(0);
      TrainableParams p;
      p.values.resize(2 + bins);
      p.values(0) = lo;
      p.values(1) = hi;
      for (int b = 0; b < bins; ++b) {
        p.values(2 + b) = static_cast<double>(b % arch.latent_dim);
      }
      return p;
    }
    case ModelFamily::MultiLayer:
      return init_multilayer_params(arch, seed);
  }
  throw ConfigError("evolution: unknown model family");
}

Eigen::MatrixXd prototypes_for(const Architecture& arch, const World& world) {
  if (arch.family != ModelFamily::MultiLayer) return {};
  const int states = std::max(2, world_label_count(world));
  return default_prototypes(states, arch.latent_dim);
}

// Builds one individual from scratch: fresh parameters, a seeded training
// run, and a single fitness evaluation on the shared sample set.
Individual make_individual(const Architecture& arch, const World& world,
                           const std::vector<LabeledSample>& raw,
                           const std::vector<LabeledSample>& preprocessed,
                           std::uint64_t eval_seed, const TrainBudget& budget_in,
                           std::uint64_t stream, int lineage_id,
                           double noise_rate) {
  const auto samples = samples_for(arch, raw, preprocessed);
  EncoderModel model;
  model.arch = arch;
  model.params = fresh_params(arch, world, samples, derive_seed(stream, "init"));
  model.noise_rate = noise_rate;
  model.prototypes = prototypes_for(arch, world);
  TrainBudget budget = budget_in;
  budget.seed = derive_seed(stream, "train");
  const TrainResult trained =
      train_local_search(model, samples, Objective::information_fitness, budget);
  model.params = trained.params;
  const auto [joint, fit] = fitness_of_model(model, samples, eval_seed);
  Individual out;
  out.arch = arch;
  out.params = model.params;
  out.prototypes = model.prototypes;
  out.fitness = fit;
  out.energy = resource_costs(arch).energy_rho;
  out.lineage_id = lineage_id;
  return out;
}

struct SharedSamples {
  std::vector<LabeledSample> raw;
  std::vector<LabeledSample> preprocessed;  // empty unless the world has a map
};

SharedSamples draw_shared_samples(const World& world, int n,
                                  std::uint64_t root_seed) {
  SharedSamples s;
  s.raw = sample_world(world, n, derive_seed(root_seed, "train_sample"));
  if (world.kind == WorldKind::Shape) {
    s.preprocessed = preprocess_samples(world, s.raw);
  }
  return s;
}

std::vector<Individual> select_population(std::vector<Individual> pool,
                                          const EvolutionConfig& config,
                                          std::uint64_t selection_seed) {
  const std::size_t keep =
      std::min<std::size_t>(pool.size(),
                            static_cast<std::size_t>(config.population_size));
  // Locate the exact best individual before any reordering.
  std::size_t elite = 0;
  for (std::size_t i = 1; i < pool.size(); ++i) {
    if (exactly_better(pool[i], pool[elite])) elite = i;
  }
  const int elite_lineage = pool[elite].lineage_id;
  const Individual elite_copy = pool[elite];

  std::vector<Individual> selected;
  selected.reserve(keep);
  if (config.selection == SelectionRule::truncation) {
    std::sort(pool.begin(), pool.end(),
              [&](const Individual& a, const Individual& b) {
                return ranks_ahead(a, b, config.noise_margin);
              });
    selected.assign(pool.begin(), pool.begin() + static_cast<long>(keep));
  } else {
    Rng rng(selection_seed);
    std::vector<Individual> remaining = std::move(pool);
    while (selected.size() < keep && !remaining.empty()) {
      const std::size_t k = std::min<std::size_t>(
          static_cast<std::size_t>(config.tournament_size), remaining.size());
      std::size_t winner = rng.index(remaining.size());
      for (std::size_t round = 1; round < k; ++round) {
        const std::size_t challenger = rng.index(remaining.size());
        if (ranks_ahead(remaining[challenger], remaining[winner],
                        config.noise_margin)) {
          winner = challenger;
        }
      }
      selected.push_back(remaining[winner]);
      remaining.erase(remaining.begin() + static_cast<long>(winner));
    }
  }

  // Elitism: the exact best individual is always retained, so the population
  // maximum fitness never decreases.
  const bool elite_present =
      std::any_of(selected.begin(), selected.end(), [&](const Individual& s) {
        return s.lineage_id == elite_lineage;
      });
  if (!elite_present && !selected.empty()) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < selected.size(); ++i) {
      if (exactly_better(selected[worst], selected[i])) worst = i;
    }
    selected[worst] = elite_copy;
  }
  std::sort(selected.begin(), selected.end(),
            [&](const Individual& a, const Individual& b) {
              return ranks_ahead(a, b, config.noise_margin);
            });
  return selected;
}

GenerationSummary summarize(const PopulationState& pop,
                            int accepted_variations) {
  GenerationSummary s;
  s.generation = pop.generation;
  s.population_size = static_cast<int>(pop.individuals.size());
  s.accepted_variations = accepted_variations;
  double total = 0.0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < pop.individuals.size(); ++i) {
    total += pop.individuals[i].fitness.bits;
    if (exactly_better(pop.individuals[i], pop.individuals[best])) best = i;
  }
  s.best_fitness = pop.individuals[best].fitness.bits;
  s.best_arch = pop.individuals[best].arch;
  s.mean_fitness = total / static_cast<double>(pop.individuals.size());
  return s;
}

Architecture carry_to_world(Architecture arch, const World& world) {
  arch.preprocessing = false;
  arch.input_dim = world_input_dim(world, false);
  return arch;
}

}  // namespace

bool operator==(const Architecture& a, const Architecture& b) {
  return a.family == b.family && a.units_per_layer == b.units_per_layer &&
         a.latent_dim == b.latent_dim && a.input_dim == b.input_dim &&
         a.connectivity == b.connectivity && a.preprocessing == b.preprocessing;
}

int edit_distance(const Architecture& a, const Architecture& b) {
  if (a.family != b.family) {
    throw NotIncremental(
        "edit_distance: architectures of different families are not "
        "incrementally related");
  }
  if (a.preprocessing == b.preprocessing && a.input_dim != b.input_dim) {
    throw NotIncremental(
        "edit_distance: input dimension differs without a preprocessing "
        "change to explain it");
  }
  int distance = (a.preprocessing != b.preprocessing) ? 1 : 0;
  const std::size_t layers =
      std::max(a.units_per_layer.size(), b.units_per_layer.size());
  for (std::size_t i = 0; i < layers; ++i) {
    const int wa = i < a.units_per_layer.size() ? a.units_per_layer[i] : 0;
    const int wb = i < b.units_per_layer.size() ? b.units_per_layer[i] : 0;
    distance += std::abs(wa - wb);
  }
  if (latent_is_free(a.family)) distance += std::abs(a.latent_dim - b.latent_dim);
  return distance;
}

Architecture apply_variation(const Architecture& arch, const VariationOp& op,
                             const World& world) {
  Architecture out = arch;
  switch (op.kind) {
    case VariationKind::add_unit:
      switch (arch.family) {
        case ModelFamily::ThresholdUnit:
          out.units_per_layer.at(0) += 1;
          out.latent_dim += 1;
          break;
        case ModelFamily::Tabular:
          out.units_per_layer.at(0) += 1;
          break;
        case ModelFamily::MultiLayer:
          if (out.units_per_layer.empty()) {
            throw ConfigError(
                "apply_variation: add_unit needs a hidden layer; use "
                "add_layer first");
          }
          out.units_per_layer.back() += 1;
          break;
      }
      break;
    case VariationKind::remove_unit:
      switch (arch.family) {
        case ModelFamily::ThresholdUnit:
          if (out.units_per_layer.at(0) <= 1) {
            throw ConfigError("apply_variation: cannot remove the last unit");
          }
          out.units_per_layer.at(0) -= 1;
          out.latent_dim -= 1;
          break;
        case ModelFamily::Tabular:
          if (out.units_per_layer.at(0) <= 1) {
            throw ConfigError("apply_variation: cannot remove the last bin");
          }
          out.units_per_layer.at(0) -= 1;
          break;
        case ModelFamily::MultiLayer:
          if (out.units_per_layer.empty()) {
            throw ConfigError(
                "apply_variation: no hidden layer to remove a unit from");
          }
          out.units_per_layer.back() -= 1;
          if (out.units_per_layer.back() == 0) out.units_per_layer.pop_back();
          break;
      }
      break;
    case VariationKind::add_layer:
      if (arch.family != ModelFamily::MultiLayer) {
        throw ConfigError("apply_variation: add_layer is multilayer-only");
      }
      out.units_per_layer.push_back(1);
      break;
    case VariationKind::widen_layer:
      if (arch.family != ModelFamily::MultiLayer ||
          arch.units_per_layer.empty()) {
        throw ConfigError(
            "apply_variation: widen_layer needs a multilayer hidden layer");
      }
      out.units_per_layer.front() += 1;
      break;
    case VariationKind::change_latent_dim:
      if (arch.family == ModelFamily::ThresholdUnit) {
        throw ConfigError(
            "apply_variation: threshold latent width is the unit count and "
            "cannot be varied directly");
      }
      if (op.magnitude != 1 && op.magnitude != -1) {
        throw ConfigError(
            "apply_variation: change_latent_dim moves by exactly one");
      }
      out.latent_dim += op.magnitude;
      if (out.latent_dim < 1) {
        throw ConfigError("apply_variation: latent dimension must stay >= 1");
      }
      break;
    case VariationKind::add_preprocessing:
      if (arch.preprocessing) {
        throw ConfigError("apply_variation: preprocessing is already enabled");
      }
      out.preprocessing = true;
      out.input_dim = world_input_dim(world, true);
      break;
  }
  validate(out);
  return out;
}

std::vector<VariationOp> enumerate_variations(const Architecture& arch,
                                              const ConstraintSet& cs,
                                              const World* world) {
  static const VariationOp candidates[] = {
      {VariationKind::add_unit, 1},
      {VariationKind::remove_unit, -1},
      {VariationKind::add_layer, 1},
      {VariationKind::widen_layer, 1},
      {VariationKind::change_latent_dim, 1},
      {VariationKind::change_latent_dim, -1},
      {VariationKind::add_preprocessing, 1},
  };
  // A placeholder world lets structural ops run without one; preprocessing
  // then has nothing to attach to and is skipped below.
  World fallback;
  const World& w = world ? *world : fallback;
  std::vector<VariationOp> ops;
  std::vector<Architecture> seen;
  for (const VariationOp& op : candidates) {
    if (op.kind == VariationKind::add_preprocessing && world == nullptr) {
      continue;
    }
    Architecture result;
    try {
      result = apply_variation(arch, op, w);
    } catch (const Error&) {
      continue;
    }
    if (!feasible(result, cs).ok) continue;
    bool duplicate = false;
    for (const Architecture& prior : seen) {
      if (prior == result) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    seen.push_back(result);
    ops.push_back(op);
  }
  return ops;
}

void validate(const EvolutionConfig& config) {
  validate(config.initial_arch);
  validate(config.train_budget);
  if (config.population_size < 1) {
    throw ConfigError("evolution config: population_size must be >= 1");
  }
  if (!(config.variation_probability >= 0.0) ||
      !(config.variation_probability <= 1.0)) {
    throw ConfigError("evolution config: variation_probability must be in [0, 1]");
  }
  if (config.eval_samples < 1) {
    throw ConfigError("evolution config: eval_samples must be >= 1");
  }
  if (!(config.noise_margin > 0.0) || !std::isfinite(config.noise_margin)) {
    throw ConfigError("evolution config: noise_margin must be positive");
  }
  if (!(config.variation_energy_cost >= 0.0) ||
      !std::isfinite(config.variation_energy_cost)) {
    throw ConfigError(
        "evolution config: variation_energy_cost must be non-negative");
  }
  if (config.tournament_size < 1) {
    throw ConfigError("evolution config: tournament_size must be >= 1");
  }
  if (!(config.model_noise_rate >= 0.0) || !(config.model_noise_rate <= 1.0)) {
    throw ConfigError("evolution config: model_noise_rate must be in [0, 1]");
  }
  if (config.workers < 1) {
    throw ConfigError("evolution config: workers must be >= 1");
  }
}

PopulationState init_population(const EvolutionConfig& config,
                                const World& world, const ConstraintSet& cs,
                                std::uint64_t root_seed) {
  validate(config);
  validate(world);
  validate(cs);
  const FeasibilityReport report = feasible(config.initial_arch, cs);
  if (!report.ok) {
    std::string msg = "init_population: initial architecture violates";
    for (const std::string& name : report.violations) msg += " " + name;
    throw ConfigError(msg);
  }
  const SharedSamples shared =
      draw_shared_samples(world, config.eval_samples, root_seed);
  const std::uint64_t eval_seed = derive_seed(root_seed, "eval");

  PopulationState pop;
  pop.generation = 0;
  pop.rng_root_seed = root_seed;
  pop.individuals.resize(static_cast<std::size_t>(config.population_size));
  parallel_for(pop.individuals.size(), config.workers, [&](std::size_t i) {
    const std::uint64_t stream = derive_seed(
        root_seed, {0ULL, static_cast<std::uint64_t>(i), label_hash("spawn")});
    pop.individuals[i] = make_individual(
        config.initial_arch, world, shared.raw, shared.preprocessed, eval_seed,
        config.train_budget, stream, static_cast<int>(i),
        config.model_noise_rate);
  });
  return pop;
}

std::pair<PopulationState, std::vector<AdaptationRecord>> evolve_step(
    const PopulationState& pop, const World& world,
    const EvolutionConfig& config, const ConstraintSet& cs) {
  validate(config);
  if (pop.individuals.empty()) {
    throw EmptyEvidence("evolve_step: empty population");
  }
  const std::uint64_t root = pop.rng_root_seed;
  const SharedSamples shared =
      draw_shared_samples(world, config.eval_samples, root);
  const std::uint64_t eval_seed = derive_seed(root, "eval");

  struct ChildSlot {
    std::optional<Individual> child;
    std::optional<AdaptationRecord> record;
  };
  std::vector<ChildSlot> slots(pop.individuals.size());

  parallel_for(pop.individuals.size(), config.workers, [&](std::size_t i) {
    const Individual& parent = pop.individuals[i];
    const std::uint64_t stream = derive_seed(
        root, {static_cast<std::uint64_t>(pop.generation),
               static_cast<std::uint64_t>(parent.lineage_id),
               label_hash("offspring")});
    Rng choice(derive_seed(stream, "vary"));
    if (!choice.bernoulli(config.variation_probability)) return;
    const std::vector<VariationOp> ops =
        enumerate_variations(parent.arch, cs, &world);
    if (ops.empty()) return;
    const VariationOp op = ops[choice.index(ops.size())];
    const Architecture child_arch = apply_variation(parent.arch, op, world);
    AdaptationRecord rec;
    rec.parent_arch = parent.arch;
    rec.child_arch = child_arch;
    rec.op = op;
    rec.parent_lineage = parent.lineage_id;
    rec.child_lineage =
        (pop.generation + 1) * 10000 + static_cast<int>(i);
    rec.parent_fitness = parent.fitness.bits;
    rec.edit_size = 1;
    rec.delta_h = resource_costs(child_arch).energy_rho - parent.energy +
                  config.variation_energy_cost;
    try {
      Individual child = make_individual(
          child_arch, world, shared.raw, shared.preprocessed, eval_seed,
          config.train_budget, stream, rec.child_lineage,
          config.model_noise_rate);
      rec.child_fitness = child.fitness.bits;
      rec.delta_f = rec.child_fitness - rec.parent_fitness;
      if (rec.delta_h > 0.0) {
        rec.g_h = static_cast<double>(rec.edit_size) / rec.delta_h;
        rec.gain_per_energy = rec.delta_f / rec.delta_h;
      }
      slots[i].child = std::move(child);
    } catch (const Error&) {
      rec.trained = false;
    }
    slots[i].record = std::move(rec);
  });

  std::vector<Individual> pool = pop.individuals;
  for (const ChildSlot& slot : slots) {
    if (slot.child) pool.push_back(*slot.child);
  }
  const std::uint64_t selection_seed = derive_seed(
      root, {static_cast<std::uint64_t>(pop.generation),
             label_hash("selection")});
  std::vector<Individual> selected =
      select_population(std::move(pool), config, selection_seed);

  std::vector<AdaptationRecord> records;
  for (ChildSlot& slot : slots) {
    if (!slot.record) continue;
    AdaptationRecord rec = std::move(*slot.record);
    rec.accepted =
        rec.trained &&
        std::any_of(selected.begin(), selected.end(),
                    [&](const Individual& s) {
                      return s.lineage_id == rec.child_lineage;
                    });
    records.push_back(std::move(rec));
  }

  PopulationState next;
  next.generation = pop.generation + 1;
  next.individuals = std::move(selected);
  next.rng_root_seed = root;
  return {std::move(next), std::move(records)};
}

FitnessHistogram fitness_histogram(const PopulationState& pop, int bins) {
  if (bins < 1) throw ConfigError("fitness_histogram: bins must be >= 1");
  if (pop.individuals.empty()) {
    throw EmptyEvidence("fitness_histogram: empty population");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const Individual& ind : pop.individuals) {
    lo = std::min(lo, ind.fitness.bits);
    hi = std::max(hi, ind.fitness.bits);
  }
  double span = hi - lo;
  if (!(span > 0.0)) span = 1.0;  // uniform population: one occupied bin
  FitnessHistogram h;
  h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) {
    h.bin_edges[static_cast<std::size_t>(i)] =
        lo + span * static_cast<double>(i) / static_cast<double>(bins);
  }
  h.densities.assign(static_cast<std::size_t>(bins), 0.0);
  const double weight = 1.0 / static_cast<double>(pop.individuals.size());
  for (const Individual& ind : pop.individuals) {
    int idx = static_cast<int>((ind.fitness.bits - lo) / span *
                               static_cast<double>(bins));
    idx = std::clamp(idx, 0, bins - 1);
    h.densities[static_cast<std::size_t>(idx)] += weight;
  }
  return h;
}

bool is_adaptable(const Architecture& arch, const World& world,
                  const EvolutionConfig& config, const ConstraintSet& cs,
                  int trials) {
  if (trials < 1) throw ConfigError("is_adaptable: trials must be >= 1");
  validate(config);
  validate(world);
  const std::uint64_t root = config.train_budget.seed;
  const SharedSamples shared =
      draw_shared_samples(world, config.eval_samples, root);
  const std::uint64_t eval_seed = derive_seed(root, "eval");

  double parent_best = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t stream = derive_seed(
        root, {static_cast<std::uint64_t>(t), label_hash("adapt_parent")});
    const Individual parent =
        make_individual(arch, world, shared.raw, shared.preprocessed,
                        eval_seed, config.train_budget, stream, 0,
                        config.model_noise_rate);
    parent_best = std::max(parent_best, parent.fitness.bits);
  }

  const std::vector<VariationOp> ops = enumerate_variations(arch, cs, &world);
  for (int t = 0; t < trials; ++t) {
    for (std::size_t oi = 0; oi < ops.size(); ++oi) {
      const Architecture child_arch = apply_variation(arch, ops[oi], world);
      const std::uint64_t stream = derive_seed(
          root, {static_cast<std::uint64_t>(t),
                 static_cast<std::uint64_t>(oi), label_hash("adapt_child")});
      try {
        const Individual child =
            make_individual(child_arch, world, shared.raw, shared.preprocessed,
                            eval_seed, config.train_budget, stream, 0,
                            config.model_noise_rate);
        if (child.fitness.bits > parent_best + config.noise_margin) {
          return true;
        }
      } catch (const Error&) {
        continue;
      }
    }
  }
  return false;
}

std::pair<double, double> efficiency_scores(const AdaptationRecord& rec) {
  if (!(rec.delta_h > 0.0)) {
    throw DegenerateInput(
        "efficiency_scores: energy cost must be positive (delta_h = " +
        std::to_string(rec.delta_h) + ")");
  }
  if (rec.edit_size < 1) {
    throw DegenerateInput("efficiency_scores: edit_size must be >= 1");
  }
  return {static_cast<double>(rec.edit_size) / rec.delta_h,
          rec.delta_f / rec.delta_h};
}

double transition_rate(const Architecture& parent, const Architecture& child,
                       const World& world, const EvolutionConfig& config,
                       int trials) {
  if (trials < 1) throw ConfigError("transition_rate: trials must be >= 1");
  validate(config);
  validate(world);
  const int distance = edit_distance(parent, child);
  if (distance != 1) {
    throw NotIncremental(
        "transition_rate: parent and child must be one edit apart (distance " +
        std::to_string(distance) + ")");
  }
  const std::uint64_t root = config.train_budget.seed;
  const SharedSamples shared =
      draw_shared_samples(world, config.eval_samples, root);
  const std::uint64_t eval_seed = derive_seed(root, "eval");

  double parent_best = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t stream = derive_seed(
        root, {static_cast<std::uint64_t>(t), label_hash("rate_parent")});
    const Individual p =
        make_individual(parent, world, shared.raw, shared.preprocessed,
                        eval_seed, config.train_budget, stream, 0,
                        config.model_noise_rate);
    parent_best = std::max(parent_best, p.fitness.bits);
  }
  int successes = 0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t stream = derive_seed(
        root, {static_cast<std::uint64_t>(t), label_hash("rate_child")});
    const Individual c =
        make_individual(child, world, shared.raw, shared.preprocessed,
                        eval_seed, config.train_budget, stream, 0,
                        config.model_noise_rate);
    if (c.fitness.bits >= parent_best + config.noise_margin) ++successes;
  }
  return static_cast<double>(successes) / static_cast<double>(trials);
}

EvolutionTrajectory run_evolution(const EvolutionConfig& config,
                                  const World& world, int generations,
                                  const ConstraintSet& cs,
                                  std::uint64_t seed) {
  if (generations < 1) {
    throw ConfigError("run_evolution: generations must be >= 1");
  }
  EvolutionTrajectory traj;
  PopulationState pop = init_population(config, world, cs, seed);
  traj.generations.push_back(summarize(pop, 0));
  for (int g = 0; g < generations; ++g) {
    auto [next, records] = evolve_step(pop, world, config, cs);
    int accepted = 0;
    for (const AdaptationRecord& rec : records) {
      if (rec.accepted) ++accepted;
    }
    traj.records.insert(traj.records.end(),
                        std::make_move_iterator(records.begin()),
                        std::make_move_iterator(records.end()));
    pop = std::move(next);
    traj.generations.push_back(summarize(pop, accepted));
  }
  traj.final_population = std::move(pop);
  return traj;
}

std::vector<EvolutionTrajectory> run_staged_evolution(
    const EvolutionConfig& config, const std::vector<World>& stages,
    int generations_per_stage, const ConstraintSet& cs, std::uint64_t seed) {
  if (stages.empty()) {
    throw ConfigError("run_staged_evolution: at least one stage required");
  }
  std::vector<EvolutionTrajectory> out;
  out.reserve(stages.size());
  EvolutionConfig stage_config = config;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    if (s > 0) {
      // Carry the selection front-runner: within a noise-margin bucket the
      // cheaper architecture represents the stage, so stages hand over the
      // smallest architecture that meets the bar rather than the exact
      // argmax, whose edge may be below measurement noise.
      stage_config.initial_arch = carry_to_world(
          out.back().final_population.individuals.front().arch, stages[s]);
    }
    out.push_back(run_evolution(stage_config, stages[s], generations_per_stage,
                                cs,
                                derive_seed(seed, {static_cast<std::uint64_t>(s)})));
  }
  return out;
}

int structural_units(const Architecture& arch) {
  switch (arch.family) {
    case ModelFamily::ThresholdUnit:
    case ModelFamily::Tabular:
      return arch.units_per_layer.empty() ? 0 : arch.units_per_layer.at(0);
    case ModelFamily::MultiLayer: {
      int total = arch.latent_dim;
      for (int w : arch.units_per_layer) total += w;
      return total;
    }
  }
  throw ConfigError("structural_units: unknown family");
}

const char* variation_kind_name(VariationKind kind) { return kind_name(kind); }

}  // namespace evonat
