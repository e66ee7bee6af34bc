// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
//
// Synthetic sensory environments with known external-state structure.
//
// Kinds and their observations:
//   TwoState        1-D position on a line. The habitable segment [0, 1]
//                   (label 0) carries prior mass priors[0]; hostile pads of
//                   equal length flank it on both sides (label 1) so a
//                   uniform density realizes the priors.
//   MultiInterval   1-D position; habitable = a union of disjoint intervals
//                   inside [0, 1] (label 0), hostile = interior gaps plus
//                   symmetric outer pads sized to realize the priors.
//   Logic           2-D boolean corners (0,0),(0,1),(1,0),(1,1) labeled by a
//                   boolean function; `exhaustive_corners` cycles the corners
//                   in canonical order instead of sampling them.
//   GaussianMixture two unit-covariance Gaussians at +/- separation on every
//                   axis of a `dim`-dimensional space.
//   Shape           8x8 binary rasters of a circle, triangle, or square with
//                   jittered center and size, flattened row-major to 64-D;
//                   labels 0/1/2 in that order. `shape_summary` is the fixed
//                   6-feature preprocessing map available to models that
//                   declare preprocessing.
//
// Survival dynamics (TwoState only): the agent observes its scalar
// position; if its binary model raises its unit it stays, otherwise it moves
// by a uniform step in [-move_scale, move_scale], clamped to the domain. It
// dies after more than `endurance` consecutive steps spent in hostile
// territory.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "evonat/errors.hpp"
#include "evonat/infotheory.hpp"
#include "evonat/models.hpp"
#include "evonat/sample.hpp"

namespace evonat {

enum class WorldKind { TwoState, MultiInterval, Logic, GaussianMixture, Shape };

enum class LogicFunction { Xor, And, Or };

struct World {
  WorldKind kind = WorldKind::TwoState;
  std::uint64_t seed = 0;
  Eigen::VectorXd priors;  // empty = per-kind default
  // MultiInterval: disjoint habitable intervals inside [0, 1].
  std::vector<std::pair<double, double>> habitable_intervals;
  // Logic:
  LogicFunction logic_fn = LogicFunction::Xor;
  bool exhaustive_corners = false;
  // GaussianMixture:
  int dim = 10;
  double separation = 3.0;
};

void validate(const World& w);

// Class priors actually in force (explicit or per-kind default).
ProbabilityVector world_priors(const World& w);

// Observation dimensionality, optionally after the world's preprocessing
// map (only the Shape world has one; requesting preprocessing elsewhere is a
// ConfigError).
int world_input_dim(const World& w, bool preprocessed = false);

int world_label_count(const World& w);

// [lo, hi] of reachable scalar positions (TwoState / MultiInterval only).
std::pair<double, double> world_domain(const World& w);

std::vector<LabeledSample> sample_world(const World& w, int n,
                                        std::uint64_t seed);

// Fixed 6-feature summary of an 8x8 binary raster: pixel count, row and
// column on/off transitions, bounding-box width and height, fill ratio of
// the bounding box.
Eigen::VectorXd shape_summary(const Eigen::VectorXd& raster);

// Apply the world's preprocessing map to every observation.
std::vector<LabeledSample> preprocess_samples(
    const World& w, const std::vector<LabeledSample>& samples);

struct SurvivalRules {
  int endurance = 3;        // hostile steps tolerated before death
  double move_scale = 0.5;  // half-width of the uniform move step
};

struct SurvivalOutcome {
  int steps_survived = 0;
  bool alive_at_end = true;
  double trajectory_length = 0.0;
};

SurvivalOutcome survival_sim(const World& w, const EncoderModel& model,
                             int max_steps, std::uint64_t seed,
                             const SurvivalRules& rules = {});

// CSV dump of a sample set: header "x0,...,label", full-precision values.
std::string write_samples_csv(std::span<const LabeledSample> samples);
std::vector<LabeledSample> read_samples_csv(const std::string& text);

}  // namespace evonat
