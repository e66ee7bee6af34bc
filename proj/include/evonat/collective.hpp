// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Population-level fitness accounting and communication amplification.
//
// A roster holds one fitness value per individual. Communication moves every
// individual toward the roster maximum by transfer efficiency tau:
//
//   F(x) <- F(x) + tau * (F_max - F(x))
//
// so tau = 0 is the identity, tau = 1 lifts everyone to the maximum, and the
// total fitness grows by exactly tau * N * (F_max - F_mean): the gain of
// sharing what the best individual knows scales with the population size.

#include <algorithm>
#include <cmath>
#include <vector>

#include "evonat/errors.hpp"

namespace evonat {

struct FitnessRoster {
  std::vector<double> values;
};

inline void validate(const FitnessRoster& r) {
  if (r.values.empty()) {
    throw EmptyEvidence("fitness roster: at least one individual required");
  }
  for (double v : r.values) {
    if (!std::isfinite(v)) {
      throw NumericalError("fitness roster: non-finite fitness value");
    }
  }
}

inline double total_fitness(const FitnessRoster& r) {
  validate(r);
  double total = 0.0;
  for (double v : r.values) total += v;
  return total;
}

inline FitnessRoster communicate(const FitnessRoster& r, double tau) {
  validate(r);
  if (!(tau >= 0.0) || !(tau <= 1.0)) {
    throw ConfigError("communicate: tau must lie in [0, 1]");
  }
  const double best = *std::max_element(r.values.begin(), r.values.end());
  FitnessRoster out = r;
  for (double& v : out.values) v += tau * (best - v);
  return out;
}

// Average per-individual fitness change between two snapshots of the same
// population.
inline double communication_gain(const FitnessRoster& before,
                                 const FitnessRoster& after) {
  validate(before);
  validate(after);
  if (before.values.size() != after.values.size()) {
    throw ShapeError("communication_gain: rosters differ in population size");
  }
  return (total_fitness(after) - total_fitness(before)) /
         static_cast<double>(before.values.size());
}

}  // namespace evonat
