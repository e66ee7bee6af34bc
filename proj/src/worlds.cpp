// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#include "evonat/worlds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "evonat/rng.hpp"

namespace evonat {

namespace {

constexpr int kRaster = 8;

int logic_value(LogicFunction fn, int a, int b) {
  switch (fn) {
    case LogicFunction::Xor: return a ^ b;
    case LogicFunction::And: return a & b;
    case LogicFunction::Or: return a | b;
  }
  throw ConfigError("logic_value: unknown function");
}

Eigen::VectorXd default_priors(const World& w) {
  switch (w.kind) {
    case WorldKind::TwoState:
    case WorldKind::MultiInterval:
      return Eigen::Vector2d{0.7, 0.3};
    case WorldKind::Logic: {
      int ones = 0;
      for (int corner = 0; corner < 4; ++corner)
        ones += logic_value(w.logic_fn, corner >> 1, corner & 1);
      return Eigen::Vector2d{(4.0 - ones) / 4.0, ones / 4.0};
    }
    case WorldKind::GaussianMixture:
      return Eigen::Vector2d{0.5, 0.5};
    case WorldKind::Shape:
      return Eigen::Vector3d{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  }
  throw ConfigError("default_priors: unknown world kind");
}

Eigen::VectorXd effective_priors(const World& w) {
  return w.priors.size() > 0 ? w.priors : default_priors(w);
}

// Habitable intervals in force (MultiInterval), sorted.
std::vector<std::pair<double, double>> habitable(const World& w) {
  std::vector<std::pair<double, double>> iv = w.habitable_intervals;
  if (iv.empty()) iv = {{0.0, 0.4}, {0.6, 1.0}};
  std::sort(iv.begin(), iv.end());
  return iv;
}

double habitable_length(const std::vector<std::pair<double, double>>& iv) {
  double total = 0.0;
  for (const auto& [lo, hi] : iv) total += hi - lo;
  return total;
}

// Hostile segments of a 1-D world: outer pads plus interior gaps.
std::vector<std::pair<double, double>> hostile_segments(const World& w) {
  const auto [dom_lo, dom_hi] = world_domain(w);
  std::vector<std::pair<double, double>> segments;
  if (w.kind == WorldKind::TwoState) {
    segments.emplace_back(dom_lo, 0.0);
    segments.emplace_back(1.0, dom_hi);
  } else {
    const auto iv = habitable(w);
    double cursor = dom_lo;
    for (const auto& [lo, hi] : iv) {
      if (lo > cursor) segments.emplace_back(cursor, lo);
      cursor = hi;
    }
    if (dom_hi > cursor) segments.emplace_back(cursor, dom_hi);
  }
  std::erase_if(segments, [](const auto& s) { return s.second <= s.first; });
  return segments;
}

bool is_hostile(const World& w, double x) {
  if (w.kind == WorldKind::TwoState) return x < 0.0 || x > 1.0;
  for (const auto& [lo, hi] : habitable(w))
    if (x >= lo && x <= hi) return false;
  return true;
}

Eigen::VectorXd render_shape(int label, Rng& rng) {
  const double cx = 3.5 + rng.uniform(-1.0, 1.0);
  const double cy = 3.5 + rng.uniform(-1.0, 1.0);
  const double size = rng.uniform(2.0, 3.0);
  Eigen::VectorXd raster = Eigen::VectorXd::Zero(kRaster * kRaster);
  for (int r = 0; r < kRaster; ++r)
    for (int c = 0; c < kRaster; ++c) {
      bool on = false;
      const double dy = r - cy, dx = c - cx;
      switch (label) {
        case 0:  // circle
          on = dy * dy + dx * dx <= size * size;
          break;
        case 1: {  // triangle: apex up, base down
          const double progress = (dy + size) / (2.0 * size);
          on = progress >= 0.0 && progress <= 1.0 &&
               std::abs(dx) <= progress * size;
          break;
        }
        case 2:  // square
          on = std::abs(dy) <= size && std::abs(dx) <= size;
          break;
        default:
          throw ConfigError("render_shape: label out of range");
      }
      if (on) raster(r * kRaster + c) = 1.0;
    }
  return raster;
}

int draw_label(const Eigen::VectorXd& priors, Rng& rng) {
  const double u = rng.u01();
  double cumulative = 0.0;
  for (Eigen::Index k = 0; k < priors.size(); ++k) {
    cumulative += priors(k);
    if (u < cumulative) return static_cast<int>(k);
  }
  return static_cast<int>(priors.size() - 1);
}

}  // namespace

void validate(const World& w) {
  const Eigen::VectorXd priors = effective_priors(w);
  ProbabilityVector check(priors);  // throws on malformed priors
  const int expected_labels =
      w.kind == WorldKind::Shape ? 3 : 2;
  if (priors.size() != expected_labels)
    throw ConfigError("World: priors length does not match the label set");

  switch (w.kind) {
    case WorldKind::TwoState:
      if (priors(0) <= 0.0)
        throw ConfigError("World: habitable prior must be positive");
      break;
    case WorldKind::MultiInterval: {
      const auto iv = habitable(w);
      double prev = 0.0;
      for (const auto& [lo, hi] : iv) {
        if (lo < 0.0 || hi > 1.0 || lo >= hi)
          throw ConfigError("World: intervals must be ordered within [0,1]");
        if (lo < prev)
          throw ConfigError("World: habitable intervals must be disjoint");
        prev = hi;
      }
      if (priors(0) <= 0.0)
        throw ConfigError("World: habitable prior must be positive");
      world_domain(w);  // checks pad feasibility
      break;
    }
    case WorldKind::Logic:
      break;
    case WorldKind::GaussianMixture:
      if (w.dim < 1) throw ConfigError("World: dim must be >= 1");
      if (!std::isfinite(w.separation) || w.separation <= 0.0)
        throw ConfigError("World: separation must be finite and > 0");
      break;
    case WorldKind::Shape:
      break;
  }
}

ProbabilityVector world_priors(const World& w) {
  return ProbabilityVector(effective_priors(w));
}

int world_input_dim(const World& w, bool preprocessed) {
  if (preprocessed && w.kind != WorldKind::Shape)
    throw ConfigError("world_input_dim: only the Shape world preprocesses");
  switch (w.kind) {
    case WorldKind::TwoState:
    case WorldKind::MultiInterval:
      return 1;
    case WorldKind::Logic:
      return 2;
    case WorldKind::GaussianMixture:
      return w.dim;
    case WorldKind::Shape:
      return preprocessed ? 6 : kRaster * kRaster;
  }
  throw ConfigError("world_input_dim: unknown world kind");
}

int world_label_count(const World& w) {
  return w.kind == WorldKind::Shape ? 3 : 2;
}

std::pair<double, double> world_domain(const World& w) {
  const Eigen::VectorXd priors = effective_priors(w);
  switch (w.kind) {
    case WorldKind::TwoState: {
      // Hostile pads on both sides sized for a uniform overall density.
      const double pad = priors(1) / priors(0) / 2.0;
      return {-pad, 1.0 + pad};
    }
    case WorldKind::MultiInterval: {
      const auto iv = habitable(w);
      const double length = habitable_length(iv);
      const double span = iv.back().second - iv.front().first;
      const double interior = span - length;
      const double required = length * priors(1) / priors(0);
      const double pad_total = required - interior;
      if (pad_total < 0.0)
        throw ConfigError(
            "World: interior gaps already exceed the hostile prior");
      return {iv.front().first - pad_total / 2.0,
              iv.back().second + pad_total / 2.0};
    }
    default:
      throw ConfigError("world_domain: world has no scalar domain");
  }
}

std::vector<LabeledSample> sample_world(const World& w, int n,
                                        std::uint64_t seed) {
  validate(w);
  if (n < 1) throw ConfigError("sample_world: n must be >= 1");
  Rng rng(derive_seed(seed, {w.seed, label_hash("sample_world")}));
  const Eigen::VectorXd priors = effective_priors(w);
  std::vector<LabeledSample> out;
  out.reserve(n);

  for (int i = 0; i < n; ++i) {
    LabeledSample s;
    switch (w.kind) {
      case WorldKind::TwoState: {
        s.label = draw_label(priors, rng);
        if (s.label == 0) {
          s.x = Eigen::VectorXd::Constant(1, rng.uniform(0.0, 1.0));
        } else {
          const auto [lo, hi] = world_domain(w);
          s.x = Eigen::VectorXd::Constant(
              1, rng.bernoulli(0.5) ? rng.uniform(lo, 0.0)
                                    : rng.uniform(1.0, hi));
        }
        break;
      }
      case WorldKind::MultiInterval: {
        s.label = draw_label(priors, rng);
        const auto segments =
            s.label == 0 ? habitable(w) : hostile_segments(w);
        double total = habitable_length(segments);
        double u = rng.uniform(0.0, total);
        double x = segments.back().second;
        for (const auto& [lo, hi] : segments) {
          if (u <= hi - lo) {
            x = lo + u;
            break;
          }
          u -= hi - lo;
        }
        s.x = Eigen::VectorXd::Constant(1, x);
        break;
      }
      case WorldKind::Logic: {
        const int corner = w.exhaustive_corners
                               ? i % 4
                               : static_cast<int>(rng.index(4));
        const int a = corner >> 1, b = corner & 1;
        s.x = Eigen::Vector2d{static_cast<double>(a), static_cast<double>(b)};
        s.label = logic_value(w.logic_fn, a, b);
        break;
      }
      case WorldKind::GaussianMixture: {
        s.label = draw_label(priors, rng);
        const double mean = s.label == 0 ? -w.separation : w.separation;
        s.x.resize(w.dim);
        for (int d = 0; d < w.dim; ++d) s.x(d) = mean + rng.normal();
        break;
      }
      case WorldKind::Shape: {
        s.label = draw_label(priors, rng);
        s.x = render_shape(s.label, rng);
        break;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

Eigen::VectorXd shape_summary(const Eigen::VectorXd& raster) {
  if (raster.size() != kRaster * kRaster)
    throw ShapeError("shape_summary: raster must be 8x8");
  const auto at = [&](int r, int c) { return raster(r * kRaster + c) > 0.5; };
  double on = 0.0, row_trans = 0.0, col_trans = 0.0;
  int rmin = kRaster, rmax = -1, cmin = kRaster, cmax = -1;
  for (int r = 0; r < kRaster; ++r)
    for (int c = 0; c < kRaster; ++c) {
      if (at(r, c)) {
        on += 1.0;
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
      }
      if (c + 1 < kRaster && at(r, c) != at(r, c + 1)) row_trans += 1.0;
      if (r + 1 < kRaster && at(r, c) != at(r + 1, c)) col_trans += 1.0;
    }
  const double w = rmax >= rmin ? rmax - rmin + 1 : 0;
  const double h = cmax >= cmin ? cmax - cmin + 1 : 0;
  Eigen::VectorXd features(6);
  features << on, row_trans, col_trans, w, h,
      (w > 0 && h > 0) ? on / (w * h) : 0.0;
  return features;
}

std::vector<LabeledSample> preprocess_samples(
    const World& w, const std::vector<LabeledSample>& samples) {
  if (w.kind != WorldKind::Shape)
    throw ConfigError("preprocess_samples: only the Shape world preprocesses");
  std::vector<LabeledSample> out;
  out.reserve(samples.size());
  for (const LabeledSample& s : samples) {
    LabeledSample p;
    p.x = shape_summary(s.x);
    p.label = s.label;
    out.push_back(std::move(p));
  }
  return out;
}

SurvivalOutcome survival_sim(const World& w, const EncoderModel& model,
                             int max_steps, std::uint64_t seed,
                             const SurvivalRules& rules) {
  if (w.kind != WorldKind::TwoState)
    throw ConfigError("survival_sim: TwoState worlds only");
  validate(w);
  validate(model);
  if (model.num_states() != 2)
    throw ShapeError("survival_sim: model must be binary-state");
  if (model.arch.input_dim != 1)
    throw ShapeError("survival_sim: model must read a scalar position");
  if (max_steps < 0) throw ConfigError("survival_sim: max_steps must be >= 0");
  if (rules.endurance < 0 || !(rules.move_scale > 0.0))
    throw ConfigError("survival_sim: invalid rules");

  Rng rng(derive_seed(seed, {w.seed, label_hash("survival")}));
  const auto [dom_lo, dom_hi] = world_domain(w);
  double position = rng.uniform(0.0, 1.0);  // born in the habitable segment
  SurvivalOutcome outcome;
  int hostile_streak = 0;
  for (int step = 1; step <= max_steps; ++step) {
    const Eigen::VectorXd obs = Eigen::VectorXd::Constant(1, position);
    const int state =
        encode(model, obs,
               derive_seed(seed, {w.seed, static_cast<std::uint64_t>(step)}));
    if (state != 1) {  // unit down: move in a random direction
      const double next = std::clamp(
          position + rng.uniform(-1.0, 1.0) * rules.move_scale, dom_lo,
          dom_hi);
      outcome.trajectory_length += std::abs(next - position);
      position = next;
    }
    hostile_streak = is_hostile(w, position) ? hostile_streak + 1 : 0;
    outcome.steps_survived = step;
    if (hostile_streak > rules.endurance) {
      outcome.alive_at_end = false;
      return outcome;
    }
  }
  outcome.alive_at_end = true;
  return outcome;
}

std::string write_samples_csv(std::span<const LabeledSample> samples) {
  if (samples.empty()) throw EmptyEvidence("write_samples_csv: no samples");
  const Eigen::Index dim = samples.front().x.size();
  std::ostringstream out;
  for (Eigen::Index d = 0; d < dim; ++d) out << 'x' << d << ',';
  out << "label\n";
  char buf[64];
  for (const LabeledSample& s : samples) {
    if (s.x.size() != dim)
      throw ShapeError("write_samples_csv: ragged sample set");
    for (Eigen::Index d = 0; d < dim; ++d) {
      std::snprintf(buf, sizeof buf, "%.17g", s.x(d));
      out << buf << ',';
    }
    out << s.label << '\n';
  }
  return out.str();
}

std::vector<LabeledSample> read_samples_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw ShapeError("read_samples_csv: missing header");
  const auto columns = 1 + std::count(line.begin(), line.end(), ',');
  const Eigen::Index dim = columns - 1;
  if (dim < 1) throw ShapeError("read_samples_csv: no observation columns");
  std::vector<LabeledSample> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    LabeledSample s;
    s.x.resize(dim);
    for (Eigen::Index d = 0; d < dim; ++d) {
      if (!std::getline(row, field, ','))
        throw ShapeError("read_samples_csv: short row");
      s.x(d) = std::stod(field);
    }
    if (!std::getline(row, field, ','))
      throw ShapeError("read_samples_csv: missing label");
    s.label = std::stoi(field);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace evonat
