// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Small statistics helpers used by analysis code and the CLI reports.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "evonat/errors.hpp"

namespace evonat {

// Ranks with ties averaged (rank 1 = smallest value).
inline std::vector<double> tie_averaged_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

inline double pearson_correlation(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  if (x.size() != y.size())
    throw ShapeError("pearson_correlation: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw DegenerateInput("pearson_correlation: need two points");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw DegenerateInput("pearson_correlation: constant series");
  return sxy / std::sqrt(sxx * syy);
}

// Spearman rank correlation with tie-averaged ranks.
inline double spearman_correlation(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  return pearson_correlation(tie_averaged_ranks(x), tie_averaged_ranks(y));
}

inline double median_inplace(std::vector<double>& v) {
  if (v.empty()) throw EmptyEvidence("median: empty input");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Median absolute deviation around the median.
inline double median_abs_deviation(const std::vector<double>& v,
                                   double center) {
  std::vector<double> dev(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) dev[i] = std::abs(v[i] - center);
  return median_inplace(dev);
}

}  // namespace evonat
