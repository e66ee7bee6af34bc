// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#include "evonat/training.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "evonat/fitness.hpp"
#include "evonat/rng.hpp"
#include "evonat/stats.hpp"

namespace evonat {

void validate(const TrainBudget& budget) {
  if (budget.max_evaluations < 1)
    throw ConfigError("TrainBudget: max_evaluations must be >= 1");
  if (!std::isfinite(budget.step_scale) || budget.step_scale <= 0.0)
    throw ConfigError("TrainBudget: step_scale must be finite and > 0");
}

TrainableParams fit_threshold_exact(std::span<const LabeledSample> samples) {
  if (samples.empty()) throw EmptyEvidence("fit_threshold_exact: no samples");
  std::vector<std::pair<double, int>> pts;
  pts.reserve(samples.size());
  for (const LabeledSample& s : samples) {
    if (s.x.size() != 1)
      throw ShapeError("fit_threshold_exact: observations must be scalar");
    if (s.label != 0 && s.label != 1)
      throw ShapeError("fit_threshold_exact: labels must be binary");
    pts.emplace_back(s.x(0), s.label);
  }
  std::sort(pts.begin(), pts.end());

  // Collapse to distinct observation values with per-value label tallies.
  std::vector<double> values;
  std::vector<int> count, ones;
  for (const auto& [x, label] : pts) {
    if (values.empty() || x != values.back()) {
      values.push_back(x);
      count.push_back(0);
      ones.push_back(0);
    }
    count.back() += 1;
    ones.back() += label;
  }
  const int m = static_cast<int>(values.size());
  const int n = static_cast<int>(pts.size());

  // Cutpoints: sentinel, midpoints between distinct values, sentinel.
  std::vector<double> cuts(m + 1);
  cuts[0] = values.front() - 0.5;
  for (int k = 1; k < m; ++k) cuts[k] = 0.5 * (values[k - 1] + values[k]);
  cuts[m] = values.back() + 0.5;

  // Prefix sums over distinct values.
  std::vector<int> pre_count(m + 1, 0), pre_ones(m + 1, 0);
  for (int k = 0; k < m; ++k) {
    pre_count[k + 1] = pre_count[k] + count[k];
    pre_ones[k + 1] = pre_ones[k] + ones[k];
  }
  const int zeros_total = n - pre_ones[m];

  // Interval [cuts[i], cuts[j]] contains distinct values i..j-1. Scanning
  // i ascending then j ascending with strict improvement realizes the
  // smallest-left-endpoint, smallest-width tie-break.
  int best_hits = -1, best_i = 0, best_j = 0;
  for (int i = 0; i <= m; ++i) {
    for (int j = i; j <= m; ++j) {
      const int inside = pre_count[j] - pre_count[i];
      const int inside_ones = pre_ones[j] - pre_ones[i];
      const int hits = zeros_total + 2 * inside_ones - inside;
      if (hits > best_hits) {
        best_hits = hits;
        best_i = i;
        best_j = j;
      }
    }
  }
  TrainableParams out;
  out.values = Eigen::Vector2d{cuts[best_i], cuts[best_j]};
  return out;
}

namespace {

// Unclamped reconstruction score 1 - MSE/Var; shared by the public metric
// and the training objective.
double raw_generative_score(const GenerativeModel& gen,
                            std::span<const LabeledSample> samples) {
  if (samples.empty()) throw EmptyEvidence("generative_accuracy: no samples");
  const auto dim = samples.front().x.size();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  for (const LabeledSample& s : samples) {
    if (s.x.size() != dim)
      throw ShapeError("generative_accuracy: ragged sample set");
    mean += s.x;
  }
  mean /= static_cast<double>(samples.size());

  double variance = 0.0, mse = 0.0;
  for (const LabeledSample& s : samples) {
    variance += (s.x - mean).squaredNorm();
    const Eigen::VectorXd rebuilt =
        decode(gen, latent_coords(gen.encoder, s.x));
    if (rebuilt.size() != dim)
      throw ShapeError("generative_accuracy: decoder output dimension");
    mse += (s.x - rebuilt).squaredNorm();
  }
  variance /= static_cast<double>(samples.size());
  mse /= static_cast<double>(samples.size());
  if (variance <= 0.0)
    throw DegenerateInput("generative_accuracy: zero-variance sample set");
  const double score = 1.0 - mse / variance;
  if (!std::isfinite(score))
    throw NumericalError("generative_accuracy: non-finite score");
  return score;
}

TrainResult hill_climb(Eigen::VectorXd start, const TrainBudget& budget,
                       const std::function<double(const Eigen::VectorXd&)>&
                           objective) {
  validate(budget);
  Rng rng(derive_seed(budget.seed, "train_steps"));

  TrainResult result;
  Eigen::VectorXd best = std::move(start);
  double best_value = objective(best);
  if (!std::isfinite(best_value))
    throw NumericalError("train_local_search: non-finite objective");
  result.fitness_trace.push_back(best_value);
  result.accepted_evaluations.push_back(0);
  result.evaluations_used = 1;

  Eigen::VectorXd candidate(best.size());
  while (result.evaluations_used < budget.max_evaluations) {
    for (Eigen::Index i = 0; i < best.size(); ++i)
      candidate(i) = best(i) + budget.step_scale * rng.normal();
    const double value = objective(candidate);
    const int index = result.evaluations_used;
    result.evaluations_used += 1;
    if (!std::isfinite(value))
      throw NumericalError("train_local_search: non-finite objective");
    if (value > best_value) {
      best_value = value;
      best = candidate;
      result.fitness_trace.push_back(value);
      result.accepted_evaluations.push_back(index);
    }
  }
  result.params.values = std::move(best);
  return result;
}

}  // namespace

double generative_accuracy(const GenerativeModel& gen,
                           std::span<const LabeledSample> samples) {
  return std::clamp(raw_generative_score(gen, samples), 0.0, 1.0);
}

EncoderModel with_params(const EncoderModel& model,
                         const TrainableParams& params) {
  if (params.values.size() != param_count(model.arch))
    throw ShapeError("with_params: encoder parameter count");
  EncoderModel out = model;
  out.params = params;
  return out;
}

GenerativeModel with_params(const GenerativeModel& model,
                            const TrainableParams& params) {
  const Eigen::Index enc = param_count(model.encoder.arch);
  const Eigen::Index dec = decoder_param_count(model.encoder.arch);
  if (params.values.size() != enc + dec)
    throw ShapeError("with_params: joint parameter count");
  GenerativeModel out = model;
  out.encoder.params.values = params.values.head(enc);
  out.decoder_params.values = params.values.tail(dec);
  return out;
}

TrainResult train_local_search(const EncoderModel& model,
                               std::span<const LabeledSample> samples,
                               Objective objective,
                               const TrainBudget& budget) {
  if (objective != Objective::information_fitness)
    throw ConfigError(
        "train_local_search: encoders train on information_fitness");
  if (samples.empty()) throw EmptyEvidence("train_local_search: no samples");
  validate(model);
  const std::uint64_t eval_seed = derive_seed(budget.seed, "train_objective");
  return hill_climb(
      model.params.values, budget, [&](const Eigen::VectorXd& p) {
        EncoderModel candidate = model;
        candidate.params.values = p;
        return fitness_of_model(candidate, samples, eval_seed).second.bits;
      });
}

TrainResult train_local_search(const GenerativeModel& model,
                               std::span<const LabeledSample> samples,
                               Objective objective,
                               const TrainBudget& budget) {
  if (objective != Objective::generative_accuracy)
    throw ConfigError(
        "train_local_search: generative models train on generative_accuracy");
  if (samples.empty()) throw EmptyEvidence("train_local_search: no samples");
  validate(model);
  Eigen::VectorXd joint(model.encoder.params.values.size() +
                        model.decoder_params.values.size());
  joint << model.encoder.params.values, model.decoder_params.values;
  return hill_climb(std::move(joint), budget, [&](const Eigen::VectorXd& p) {
    TrainableParams tp;
    tp.values = p;
    return raw_generative_score(with_params(model, tp), samples);
  });
}

TrainableParams init_threshold_params(const Architecture& arch,
                                      std::span<const LabeledSample> samples) {
  validate(arch);
  if (arch.family != ModelFamily::ThresholdUnit)
    throw ConfigError("init_threshold_params: threshold architectures only");
  if (samples.empty()) throw EmptyEvidence("init_threshold_params: no samples");
  const int units = arch.units_per_layer[0];
  TrainableParams out;
  out.values.resize(2 * units);
  std::vector<double> coord(samples.size());
  for (int u = 0; u < units; ++u) {
    const int c = u % arch.input_dim;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i].x.size() != arch.input_dim)
        throw ShapeError("init_threshold_params: observation dimension");
      coord[i] = samples[i].x(c);
    }
    std::vector<double> scratch = coord;
    const double center = median_inplace(scratch);
    const double spread = median_abs_deviation(coord, center);
    out.values(2 * u) = center - spread;
    out.values(2 * u + 1) = center + spread;
  }
  return out;
}

TrainableParams init_multilayer_params(const Architecture& arch,
                                       std::uint64_t seed) {
  validate(arch);
  Rng rng(derive_seed(seed, "init_weights"));
  TrainableParams out;
  out.values.resize(param_count(arch));
  for (Eigen::Index i = 0; i < out.values.size(); ++i)
    out.values(i) = rng.uniform(-0.5, 0.5);
  return out;
}

}  // namespace evonat
