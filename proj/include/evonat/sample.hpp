// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// A labeled observation: the raw sensory vector plus the id of the external
// state that produced it. Labels are dense integers starting at zero.

#include <Eigen/Core>
#include <algorithm>
#include <span>
#include <vector>

#include "evonat/errors.hpp"

namespace evonat {

struct LabeledSample {
  Eigen::VectorXd x;
  int label = 0;
};

inline int max_label(std::span<const LabeledSample> samples) {
  if (samples.empty()) throw EmptyEvidence("max_label: no samples");
  int m = 0;
  for (const auto& s : samples) m = std::max(m, s.label);
  return m;
}

// Observations stacked as rows, labels dropped.
inline Eigen::MatrixXd observation_matrix(
    std::span<const LabeledSample> samples) {
  if (samples.empty()) throw EmptyEvidence("observation_matrix: no samples");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(samples.size()),
                    samples[0].x.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (samples[static_cast<std::size_t>(i)].x.size() != m.cols())
      throw ShapeError("observation_matrix: ragged sample widths");
    m.row(i) = samples[static_cast<std::size_t>(i)].x.transpose();
  }
  return m;
}

}  // namespace evonat
