// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
//
// Population evolution over architectures: incremental variation, empirical
// adaptation records, deterministic selection, and transition statistics.
//
// Variation table (each op moves the architecture edit distance by exactly
// one):
//   add_unit            threshold: one more unit (and latent bit);
//                       tabular: one more bin; multilayer: one more unit in
//                       the last hidden layer (excluded when hidden-free)
//   remove_unit         the reverse; excluded at minimal size; removing a
//                       width-1 last hidden layer drops the layer
//   add_layer           multilayer only: append a width-1 hidden layer
//   widen_layer         multilayer only: first hidden layer grows by one
//   change_latent_dim   multilayer/tabular: latent dimension +/- 1 (min 1);
//                       threshold latent is derived from the unit count and
//                       never varied directly
//   add_preprocessing   switch to the world's fixed preprocessing map (only
//                       where the world has one and the model does not)
//
// Edit distance between two architectures of the same family: the summed
// absolute difference of per-layer unit counts (layers aligned from the
// input side, missing layers count as width 0), plus the latent-dimension
// difference for families where latent is free, plus one per preprocessing
// toggle. Different families, or differing input dimensions not explained
// by preprocessing, are not incrementally related (NotIncremental).
//
// Determinism: every stochastic decision draws from a stream derived as
// hash(root_seed, generation, lineage_id), so child construction is
// order-independent and may run on any number of workers. The training and
// evaluation sample set is drawn once per run from the root seed, and each
// individual's fitness is measured once, when the individual is created.
//
// Selection: fitness is compared in noise-margin buckets
// (floor(F / noise_margin)); within a bucket lower energy wins, then lower
// lineage id. The exact best-fitness individual is always retained, so the
// population maximum never decreases. Tournament selection replaces the
// truncation order with seeded tournaments but keeps the elite guarantee.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "evonat/constraints.hpp"
#include "evonat/errors.hpp"
#include "evonat/models.hpp"
#include "evonat/training.hpp"
#include "evonat/worlds.hpp"

namespace evonat {

enum class VariationKind {
  add_unit,
  remove_unit,
  add_layer,
  widen_layer,
  change_latent_dim,
  add_preprocessing,
};

struct VariationOp {
  VariationKind kind = VariationKind::add_unit;
  int magnitude = 1;  // +1 or -1
};

bool operator==(const Architecture& a, const Architecture& b);

// Throws NotIncremental for architectures that are not connected by any
// chain of single-step variations (different family or unexplained input
// dimension change).
int edit_distance(const Architecture& a, const Architecture& b);

// The architecture one step away under `op`. The world supplies the input
// dimensionality of its preprocessing map.
Architecture apply_variation(const Architecture& arch, const VariationOp& op,
                             const World& world);

// All single-step variations whose result is a valid architecture that
// still satisfies `cs` (the adaptive subspace is a subset of the feasible
// one). Variations yielding the same architecture are listed once. An empty
// list marks a non-adaptable point. Without a world, preprocessing
// variations are not available.
std::vector<VariationOp> enumerate_variations(const Architecture& arch,
                                              const ConstraintSet& cs,
                                              const World* world = nullptr);

struct Individual {
  Architecture arch;
  TrainableParams params;
  Eigen::MatrixXd prototypes;  // multilayer state anchors (may be empty)
  FitnessValue fitness;
  double energy = 0.0;
  int lineage_id = 0;
};

struct PopulationState {
  int generation = 0;
  std::vector<Individual> individuals;
  std::uint64_t rng_root_seed = 0;
};

struct FitnessHistogram {
  std::vector<double> bin_edges;  // bins + 1 increasing edges
  std::vector<double> densities;  // sums to 1
};

struct AdaptationRecord {
  Architecture parent_arch;
  Architecture child_arch;
  VariationOp op;
  int parent_lineage = 0;
  int child_lineage = 0;
  double parent_fitness = 0.0;
  double child_fitness = 0.0;
  double delta_f = 0.0;
  double delta_h = 0.0;  // energy cost: rho(child) - rho(parent) + overhead
  int edit_size = 1;
  double g_h = 0.0;             // edit_size / delta_h when delta_h > 0
  double gain_per_energy = 0.0; // delta_f / delta_h when delta_h > 0
  bool accepted = false;        // survived selection
  bool trained = true;          // false when child training failed
};

enum class SelectionRule { truncation, tournament };

struct EvolutionConfig {
  Architecture initial_arch;
  int population_size = 8;
  double variation_probability = 0.5;  // q
  TrainBudget train_budget{2000, 0.25, 0};
  int eval_samples = 2000;
  double noise_margin = 0.02;          // fitness resolution for comparisons
  double variation_energy_cost = 0.0;  // per-variation overhead in delta_h
  SelectionRule selection = SelectionRule::truncation;
  int tournament_size = 2;
  double model_noise_rate = 0.0;
  int workers = 1;
};

void validate(const EvolutionConfig& config);

// Population of freshly initialized, trained, evaluated copies of the
// initial architecture (lineage ids 0..N-1, generation 0).
PopulationState init_population(const EvolutionConfig& config,
                                const World& world, const ConstraintSet& cs,
                                std::uint64_t root_seed);

// One generation: per-parent variation with probability q, child training
// and evaluation, deterministic selection over parents plus children.
std::pair<PopulationState, std::vector<AdaptationRecord>> evolve_step(
    const PopulationState& pop, const World& world,
    const EvolutionConfig& config, const ConstraintSet& cs);

FitnessHistogram fitness_histogram(const PopulationState& pop, int bins);

// True iff, over `trials` seeded attempts, some feasible variation trains
// to fitness above the parent's best attainable fitness (same budget) by
// more than the noise margin.
bool is_adaptable(const Architecture& arch, const World& world,
                  const EvolutionConfig& config, const ConstraintSet& cs,
                  int trials);

// G_H = edit_size / delta_h and gain_per_energy = delta_f / delta_h.
// Requires a positive energy cost.
std::pair<double, double> efficiency_scores(const AdaptationRecord& rec);

// Fraction of seeded trials in which the trained child reaches the trained
// parent's best fitness plus the noise margin. Parent and child must be one
// edit apart.
double transition_rate(const Architecture& parent, const Architecture& child,
                       const World& world, const EvolutionConfig& config,
                       int trials);

struct GenerationSummary {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  Architecture best_arch;
  int population_size = 0;
  int accepted_variations = 0;
};

struct EvolutionTrajectory {
  std::vector<GenerationSummary> generations;  // includes generation 0
  std::vector<AdaptationRecord> records;
  PopulationState final_population;
};

EvolutionTrajectory run_evolution(const EvolutionConfig& config,
                                  const World& world, int generations,
                                  const ConstraintSet& cs,
                                  std::uint64_t seed);

// Chained stages: each stage evolves on its world, then the best
// architecture (re-dimensioned for the next world's observations) seeds the
// next stage's population.
std::vector<EvolutionTrajectory> run_staged_evolution(
    const EvolutionConfig& config, const std::vector<World>& stages,
    int generations_per_stage, const ConstraintSet& cs, std::uint64_t seed);

// Effective structural unit count reported in summaries: threshold units,
// table bins, or hidden-plus-latent units.
int structural_units(const Architecture& arch);

// Stable lowercase token for logs and serialized records.
const char* variation_kind_name(VariationKind kind);

}  // namespace evonat
