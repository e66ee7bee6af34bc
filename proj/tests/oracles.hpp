// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reference implementations used only by tests. Each oracle recomputes a
// quantity from first principles with plain loops so that library results
// can be checked against an independent path.

#include <Eigen/Core>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracles {

// Entropy in bits by direct summation.
inline double naive_entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

// Mutual information in bits of a normalized joint table, computed with the
// textbook double sum over marginals accumulated in plain arrays. `base`
// generalizes the logarithm for scale-invariance checks (2 = bits).
inline double naive_mutual_information(
    const std::vector<std::vector<double>>& joint, double base = 2.0) {
  const std::size_t rows = joint.size();
  const std::size_t cols = joint.empty() ? 0 : joint[0].size();
  std::vector<double> pt(rows, 0.0), px(cols, 0.0);
  for (std::size_t t = 0; t < rows; ++t)
    for (std::size_t x = 0; x < cols; ++x) {
      pt[t] += joint[t][x];
      px[x] += joint[t][x];
    }
  double f = 0.0;
  for (std::size_t t = 0; t < rows; ++t)
    for (std::size_t x = 0; x < cols; ++x) {
      const double v = joint[t][x];
      if (v > 0.0) f += std::log(v / (pt[t] * px[x])) / std::log(base) * v;
    }
  return f;
}

inline std::vector<std::vector<double>> to_nested(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> out(
      static_cast<std::size_t>(m.rows()),
      std::vector<double>(static_cast<std::size_t>(m.cols()), 0.0));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return out;
}

// Largest singular value: the true Lipschitz constant of x -> W x + b.
inline double operator_norm(const Eigen::MatrixXd& w) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w);
  return svd.singularValues()(0);
}

// Exhaustive best agreement of a closed interval [lo, hi] against binary
// labels on scalar observations: every pair of candidate cut points around
// the sorted sample, plus the empty interval. Returns best fraction of
// samples where (x inside) == (label == 1).
inline double best_interval_agreement(std::vector<std::pair<double, int>> s) {
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();
  std::vector<int> pos_prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    pos_prefix[i + 1] = pos_prefix[i] + (s[i].second == 1 ? 1 : 0);
  const int total_pos = pos_prefix[n];
  // Range [i, j) of sorted samples inside the interval.
  int best_inside = -static_cast<int>(n);  // maximize pos_in - neg_in
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) {
      const int pos_in = pos_prefix[j] - pos_prefix[i];
      const int neg_in = static_cast<int>(j - i) - pos_in;
      best_inside = std::max(best_inside, pos_in - neg_in);
    }
  // correct = pos_in + (neg_total - neg_in); the empty interval (i == j)
  // is part of the scan, so best_inside is never negative.
  const int neg_total = static_cast<int>(n) - total_pos;
  return (neg_total + best_inside) / static_cast<double>(n);
}

// Mutual information between a deterministic unit pattern and labels over a
// weighted point set; used for exhaustive threshold-model search.
struct WeightedPoint {
  Eigen::VectorXd x;
  int label;
  double weight;
};

// Enumerates interval assignments over candidate cut points for `units`
// threshold units (unit u reads coordinate u % dim) and returns the best
// achievable mutual information between the joint firing pattern and the
// label. Pure brute force; only workable for tiny unit counts.
inline double best_threshold_fitness(const std::vector<WeightedPoint>& pts,
                                     int units,
                                     const std::vector<double>& cuts) {
  const int dim = static_cast<int>(pts[0].x.size());
  const std::size_t c = cuts.size();
  // Interval choices per unit: ordered cut pairs (lo <= hi).
  std::vector<std::pair<double, double>> intervals;
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = a; b < c; ++b)
      intervals.emplace_back(cuts[a], cuts[b]);
  const std::size_t k = intervals.size();
  std::vector<std::size_t> choice(static_cast<std::size_t>(units), 0);
  int labels = 0;
  for (const auto& p : pts) labels = std::max(labels, p.label + 1);
  double best = 0.0;
  for (;;) {
    // Tally the joint (pattern, label) table for this interval assignment.
    const int states = 1 << units;
    std::vector<std::vector<double>> joint(
        static_cast<std::size_t>(states),
        std::vector<double>(static_cast<std::size_t>(labels), 0.0));
    double total = 0.0;
    for (const auto& p : pts) {
      int pattern = 0;
      for (int u = 0; u < units; ++u) {
        const auto& iv = intervals[choice[static_cast<std::size_t>(u)]];
        const double v = p.x(u % dim);
        if (v >= iv.first && v <= iv.second) pattern |= 1 << u;
      }
      joint[static_cast<std::size_t>(pattern)]
           [static_cast<std::size_t>(p.label)] += p.weight;
      total += p.weight;
    }
    for (auto& row : joint)
      for (double& v : row) v /= total;
    best = std::max(best, naive_mutual_information(joint));
    // Next assignment.
    std::size_t u = 0;
    while (u < choice.size() && ++choice[u] == k) choice[u++] = 0;
    if (u == choice.size()) break;
  }
  return best;
}

// Midpoint linear discriminant for a balanced two-Gaussian mixture with
// shared spherical covariance: classify by the sign of w . (x - midpoint).
inline int lda_classify(const Eigen::VectorXd& mean0,
                        const Eigen::VectorXd& mean1,
                        const Eigen::VectorXd& x) {
  const Eigen::VectorXd w = mean1 - mean0;
  const Eigen::VectorXd mid = 0.5 * (mean0 + mean1);
  return w.dot(x - mid) > 0.0 ? 1 : 0;
}

// Fraction of occupied bounding-box grid cells whose minority-class share
// reaches `threshold`, recomputed from scratch with nested vectors: the
// independent reference for intermixing measurements.
inline double naive_mu_x(const std::vector<std::vector<double>>& coords,
                         const std::vector<int>& labels, int resolution,
                         double threshold) {
  const std::size_t n = coords.size();
  const std::size_t dim = coords[0].size();
  std::vector<double> lo = coords[0], hi = coords[0];
  for (const auto& p : coords)
    for (std::size_t d = 0; d < dim; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  std::vector<std::vector<int>> bins(n, std::vector<int>(dim, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 0; d < dim; ++d) {
      const double width = hi[d] - lo[d];
      if (width > 0.0) {
        int b = static_cast<int>((coords[i][d] - lo[d]) / width * resolution);
        bins[i][d] = std::clamp(b, 0, resolution - 1);
      }
    }
  std::vector<std::vector<int>> cells = bins;
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  int classes = 0;
  for (int l : labels) classes = std::max(classes, l + 1);
  int mixed = 0;
  for (const auto& cell : cells) {
    std::vector<int> tally(static_cast<std::size_t>(classes), 0);
    int total = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (bins[i] == cell) {
        ++tally[static_cast<std::size_t>(labels[i])];
        ++total;
      }
    const int majority = *std::max_element(tally.begin(), tally.end());
    if ((total - majority) / static_cast<double>(total) >= threshold) ++mixed;
  }
  return static_cast<double>(mixed) / static_cast<double>(cells.size());
}

// Stationarity residual of the toy one-variable program
//   maximize f(l) = -(l - peak)^2 subject to l <= cap,
// checked at point l with multiplier eta on the constraint.
inline double quadratic_kkt_residual(double l, double peak, double cap,
                                     double eta) {
  (void)cap;
  const double df = -2.0 * (l - peak);
  return std::abs(df - eta * 1.0);
}

}  // namespace oracles
