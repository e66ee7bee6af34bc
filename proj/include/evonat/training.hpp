// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
//
// Parameter fitting at desk scale: an exact interval fit for one-dimensional
// threshold units, seeded stochastic hill climbing for everything else, and
// the reconstruction-based generative accuracy score.
//
// Hill climbing contract. The search starts from the model's current
// parameters, proposes full-vector Gaussian perturbations of width
// `step_scale`, and accepts a proposal only when it strictly improves the
// objective, so the trace of accepted objective values is non-decreasing and
// a model that starts at an optimum is returned unchanged. Every objective
// evaluation (including the initial one) counts against `max_evaluations`.
// Runs are deterministic given (model, samples, budget.seed).
//
// Generative accuracy. A generative model reconstructs each observation by
// decoding the encoder's latent coordinates; the score is
//   1 - mean squared reconstruction error / total sample variance,
// clamped to [0, 1]. Training on this objective uses the unclamped value so
// the search can climb out of regions scoring below zero.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evonat/errors.hpp"
#include "evonat/models.hpp"
#include "evonat/sample.hpp"

namespace evonat {

enum class Objective { information_fitness, generative_accuracy };

struct TrainBudget {
  int max_evaluations = 1000;
  double step_scale = 0.25;
  std::uint64_t seed = 0;
};

void validate(const TrainBudget& budget);

struct TrainResult {
  TrainableParams params;            // best parameters found
  std::vector<double> fitness_trace;  // accepted objective values, trace[0]
                                      // is the starting objective
  std::vector<int> accepted_evaluations;  // evaluation index per trace entry
  int evaluations_used = 0;
};

// Exhaustive best-agreement interval for scalar observations with binary
// labels: returns [lo, hi] maximizing the fraction of samples for which
// (lo <= x <= hi) equals (label == 1). Candidate endpoints are midpoints
// between adjacent distinct observations plus half-unit sentinels beyond the
// extremes. Ties break toward the smallest left endpoint, then the smallest
// width.
TrainableParams fit_threshold_exact(std::span<const LabeledSample> samples);

// Reconstruction score in [0, 1]; see header comment. Labels are ignored.
double generative_accuracy(const GenerativeModel& gen,
                           std::span<const LabeledSample> samples);

// Hill-climb an encoder's parameters for information fitness.
TrainResult train_local_search(const EncoderModel& model,
                               std::span<const LabeledSample> samples,
                               Objective objective, const TrainBudget& budget);

// Hill-climb a generative model (encoder and decoder parameters jointly,
// concatenated encoder-first) for generative accuracy.
TrainResult train_local_search(const GenerativeModel& model,
                               std::span<const LabeledSample> samples,
                               Objective objective, const TrainBudget& budget);

// Rebuild a model with the given parameter vector.
EncoderModel with_params(const EncoderModel& model,
                         const TrainableParams& params);
GenerativeModel with_params(const GenerativeModel& model,
                            const TrainableParams& params);

// Starting points for fresh models: threshold intervals sit at the sample
// median plus/minus one median absolute deviation of the coordinate each
// unit reads; multilayer weights draw uniformly from [-0.5, 0.5].
TrainableParams init_threshold_params(const Architecture& arch,
                                      std::span<const LabeledSample> samples);
TrainableParams init_multilayer_params(const Architecture& arch,
                                       std::uint64_t seed);

}  // namespace evonat
