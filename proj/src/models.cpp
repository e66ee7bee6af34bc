// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#include "evonat/models.hpp"

#include <algorithm>
#include <cmath>

#include "evonat/rng.hpp"

namespace evonat {

namespace {

// Dimension chain of the encoder net: input, hidden..., latent.
std::vector<int> encoder_dims(const Architecture& arch) {
  std::vector<int> dims{arch.input_dim};
  dims.insert(dims.end(), arch.units_per_layer.begin(),
              arch.units_per_layer.end());
  dims.push_back(arch.latent_dim);
  return dims;
}

// Mirror chain of the decoder: latent, reversed hidden..., input.
std::vector<int> decoder_dims(const Architecture& arch) {
  std::vector<int> dims{arch.latent_dim};
  dims.insert(dims.end(), arch.units_per_layer.rbegin(),
              arch.units_per_layer.rend());
  dims.push_back(arch.input_dim);
  return dims;
}

int chain_param_count(const std::vector<int>& dims) {
  int n = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l)
    n += dims[l] * dims[l + 1] + dims[l + 1];
  return n;
}

// Feed-forward pass over a packed parameter vector: per layer a
// column-major weight matrix then a bias vector; tanh between layers,
// affine at the end.
Eigen::VectorXd chain_forward(const std::vector<int>& dims,
                              const Eigen::VectorXd& params,
                              const Eigen::VectorXd& input) {
  Eigen::VectorXd h = input;
  Eigen::Index offset = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const Eigen::Index in = dims[l];
    const Eigen::Index out = dims[l + 1];
    const Eigen::Map<const Eigen::MatrixXd> w(params.data() + offset, out, in);
    offset += out * in;
    const Eigen::Map<const Eigen::VectorXd> b(params.data() + offset, out);
    offset += out;
    h = w * h + b;
    const bool last = l + 2 == dims.size();
    if (!last) h = h.array().tanh().matrix();
  }
  return h;
}

std::pair<double, double> sorted_interval(double a, double b) {
  return a <= b ? std::pair{a, b} : std::pair{b, a};
}

}  // namespace

void validate(const Architecture& arch) {
  if (arch.input_dim < 1) throw ConfigError("architecture: input_dim < 1");
  if (arch.latent_dim < 1) throw ConfigError("architecture: latent_dim < 1");
  for (int u : arch.units_per_layer)
    if (u < 1) throw ConfigError("architecture: empty layer");
  switch (arch.family) {
    case ModelFamily::ThresholdUnit: {
      if (arch.units_per_layer.size() != 1)
        throw ConfigError("threshold architecture: exactly one unit group");
      const int units = arch.units_per_layer[0];
      if (units > 20)
        throw ConfigError("threshold architecture: state space too large");
      if (arch.latent_dim != units)
        throw ConfigError(
            "threshold architecture: latent_dim must equal the unit count");
      break;
    }
    case ModelFamily::Tabular: {
      if (arch.units_per_layer.size() != 1)
        throw ConfigError("tabular architecture: exactly one bin group");
      if (arch.input_dim != 1)
        throw ConfigError("tabular architecture: scalar observations only");
      break;
    }
    case ModelFamily::MultiLayer:
      // Hidden layers are optional: an empty list is a single affine map.
      break;
  }
}

int param_count(const Architecture& arch) {
  validate(arch);
  switch (arch.family) {
    case ModelFamily::ThresholdUnit:
      return 2 * arch.units_per_layer[0];
    case ModelFamily::Tabular:
      return 2 + arch.units_per_layer[0];
    case ModelFamily::MultiLayer:
      return chain_param_count(encoder_dims(arch));
  }
  throw ConfigError("architecture: unknown family");
}

int decoder_param_count(const Architecture& arch) {
  validate(arch);
  return chain_param_count(decoder_dims(arch));
}

int EncoderModel::num_states() const {
  switch (arch.family) {
    case ModelFamily::ThresholdUnit:
      return 1 << arch.units_per_layer[0];
    case ModelFamily::Tabular:
      return arch.latent_dim;
    case ModelFamily::MultiLayer:
      return static_cast<int>(prototypes.rows());
  }
  throw ConfigError("architecture: unknown family");
}

void validate(const EncoderModel& model) {
  validate(model.arch);
  if (model.params.values.size() != param_count(model.arch))
    throw ShapeError("encoder: params length does not match architecture");
  if (!(model.noise_rate >= 0.0 && model.noise_rate <= 1.0))
    throw ConfigError("encoder: noise_rate outside [0, 1]");
  if (model.arch.family == ModelFamily::MultiLayer) {
    if (model.prototypes.rows() < 1)
      throw ConfigError("encoder: multilayer model needs state prototypes");
    if (model.prototypes.cols() != model.arch.latent_dim)
      throw ShapeError("encoder: prototype width != latent_dim");
  }
}

void validate(const GenerativeModel& model) {
  validate(model.encoder);
  if (model.decoder_params.values.size() !=
      decoder_param_count(model.encoder.arch))
    throw ShapeError("decoder: params length does not match architecture");
}

Eigen::MatrixXd default_prototypes(int states, int latent_dim) {
  if (states < 1 || latent_dim < 1)
    throw ConfigError("default_prototypes: need at least one state and axis");
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(states, latent_dim);
  for (int i = 0; i < states; ++i) {
    const int axis = (i / 2) % latent_dim;
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    const double ring = 1.0 + static_cast<double>(i / (2 * latent_dim));
    p(i, axis) = sign * ring;
  }
  return p;
}

int encode(const EncoderModel& model, const Eigen::VectorXd& x,
           std::uint64_t seed) {
  validate(model);
  if (x.size() != model.arch.input_dim)
    throw ShapeError("encode: observation width != input_dim");
  switch (model.arch.family) {
    case ModelFamily::ThresholdUnit: {
      const int units = model.arch.units_per_layer[0];
      Rng noise(seed);
      int pattern = 0;
      for (int u = 0; u < units; ++u) {
        const auto [lo, hi] = sorted_interval(model.params.values(2 * u),
                                              model.params.values(2 * u + 1));
        const double v = x(u % model.arch.input_dim);
        bool fire = v >= lo && v <= hi;
        if (model.noise_rate > 0.0 && noise.u01() < model.noise_rate)
          fire = !fire;
        if (fire) pattern |= 1 << u;
      }
      return pattern;
    }
    case ModelFamily::Tabular: {
      const int bins = model.arch.units_per_layer[0];
      const auto [lo, hi] =
          sorted_interval(model.params.values(0), model.params.values(1));
      const double width = hi - lo;
      int bin = 0;
      if (width > 0.0) {
        bin = static_cast<int>(std::floor((x(0) - lo) / width * bins));
        bin = std::clamp(bin, 0, bins - 1);
      }
      const long assigned = std::lround(model.params.values(2 + bin));
      return static_cast<int>(
          std::clamp<long>(assigned, 0, model.arch.latent_dim - 1));
    }
    case ModelFamily::MultiLayer: {
      const Eigen::VectorXd z = latent_coords(model, x);
      Eigen::Index best = 0;
      double best_d2 = (model.prototypes.row(0).transpose() - z).squaredNorm();
      for (Eigen::Index k = 1; k < model.prototypes.rows(); ++k) {
        const double d2 =
            (model.prototypes.row(k).transpose() - z).squaredNorm();
        if (d2 < best_d2) {
          best_d2 = d2;
          best = k;
        }
      }
      return static_cast<int>(best);
    }
  }
  throw ConfigError("encode: unknown family");
}

Eigen::VectorXd latent_coords(const EncoderModel& model,
                              const Eigen::VectorXd& x) {
  validate(model);
  if (x.size() != model.arch.input_dim)
    throw ShapeError("latent_coords: observation width != input_dim");
  switch (model.arch.family) {
    case ModelFamily::ThresholdUnit: {
      const int units = model.arch.units_per_layer[0];
      Eigen::VectorXd z(units);
      for (int u = 0; u < units; ++u) {
        const auto [lo, hi] = sorted_interval(model.params.values(2 * u),
                                              model.params.values(2 * u + 1));
        const double v = x(u % model.arch.input_dim);
        z(u) = (v >= lo && v <= hi) ? 1.0 : 0.0;
      }
      return z;
    }
    case ModelFamily::Tabular: {
      EncoderModel quiet = model;
      quiet.noise_rate = 0.0;
      Eigen::VectorXd z = Eigen::VectorXd::Zero(model.arch.latent_dim);
      z(encode(quiet, x, 0)) = 1.0;
      return z;
    }
    case ModelFamily::MultiLayer:
      return chain_forward(encoder_dims(model.arch), model.params.values, x);
  }
  throw ConfigError("latent_coords: unknown family");
}

Eigen::VectorXd decode(const GenerativeModel& model,
                       const Eigen::VectorXd& latent) {
  validate(model);
  if (latent.size() != model.encoder.arch.latent_dim)
    throw ShapeError("decode: latent width != latent_dim");
  return chain_forward(decoder_dims(model.encoder.arch),
                       model.decoder_params.values, latent);
}

ResourceCost resource_costs(const Architecture& arch,
                            const EnergyCoefficients& coeff) {
  validate(arch);
  ResourceCost cost;
  switch (arch.family) {
    case ModelFamily::ThresholdUnit: {
      const int units = arch.units_per_layer[0];
      cost.memory_d = 2.0 * units;
      cost.compute_c = 2.0 * units;
      cost.energy_rho = coeff.alpha_u * units + coeff.alpha_w * 2.0 * units;
      break;
    }
    case ModelFamily::Tabular: {
      const int bins = arch.units_per_layer[0];
      cost.memory_d = 2.0 + bins;
      cost.compute_c = 3.0;
      cost.energy_rho = coeff.alpha_u * bins + coeff.alpha_w * (2.0 + bins);
      break;
    }
    case ModelFamily::MultiLayer: {
      const auto dims = encoder_dims(arch);
      double macs = 0.0, units = 0.0, hidden_biases = 0.0;
      for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        macs += static_cast<double>(dims[l]) * dims[l + 1];
        units += dims[l + 1];
        const bool hidden = l + 2 < dims.size();
        if (hidden) hidden_biases += dims[l + 1];
      }
      cost.memory_d = chain_param_count(dims);
      cost.compute_c = macs;
      cost.energy_rho =
          coeff.alpha_u * units + coeff.alpha_w * (macs + hidden_biases);
      break;
    }
  }
  if (arch.preprocessing) {
    cost.energy_rho += coeff.alpha_u;
    cost.compute_c += arch.input_dim;
  }
  return cost;
}

double lipschitz_lower_bound(
    const GenerativeModel& model,
    std::span<const std::pair<Eigen::VectorXd, Eigen::VectorXd>>
        latent_pairs) {
  validate(model);
  if (latent_pairs.empty())
    throw EmptyEvidence("lipschitz_lower_bound: no pairs");
  bool any = false;
  double best = 0.0;
  for (const auto& [a, b] : latent_pairs) {
    const double gap = (b - a).norm();
    if (gap == 0.0) continue;
    any = true;
    const double ratio = (decode(model, b) - decode(model, a)).norm() / gap;
    if (!std::isfinite(ratio))
      throw NumericalError("lipschitz_lower_bound: non-finite ratio");
    best = std::max(best, ratio);
  }
  if (!any)
    throw DegenerateInput("lipschitz_lower_bound: all pairs identical");
  return best;
}

}  // namespace evonat
