// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Information fitness of an encoder against a labeled sample: encode every
// observation, tally the (internal state, external label) table, normalize,
// and take the mutual information.

#include <cstdint>
#include <span>
#include <utility>

#include "evonat/infotheory.hpp"
#include "evonat/models.hpp"
#include "evonat/rng.hpp"
#include "evonat/sample.hpp"

namespace evonat {

// Returns the empirical joint model and its fitness in bits. Per-sample
// noise streams are derived from (seed, sample index), so the result is a
// pure function of (model, samples, seed). alpha is optional Laplace
// smoothing for the count table.
inline std::pair<JointModel, FitnessValue> fitness_of_model(
    const EncoderModel& model, std::span<const LabeledSample> samples,
    std::uint64_t seed, double alpha = 0.0) {
  if (samples.empty()) throw EmptyEvidence("fitness_of_model: no samples");
  const int states = model.num_states();
  const int labels = max_label(samples) + 1;
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(states, labels);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const int t = encode(model, samples[i].x,
                         derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    counts(t, samples[i].label) += 1.0;
  }
  JointModel joint = normalize_counts(counts, alpha);
  FitnessValue fitness = mutual_information(joint);
  return {std::move(joint), fitness};
}

}  // namespace evonat
