// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Encoder and generative model families.
//
// An encoder maps a sensory observation to a discrete internal state id; the
// continuous intermediate it passes through is the latent coordinate vector.
// Families:
//
//   ThresholdUnit  n interval detectors; unit u reads input coordinate
//                  u % input_dim and raises iff the value lies inside its
//                  closed interval. The internal state is the firing
//                  pattern, so n units span 2^n states, and the latent
//                  coordinates are the n raw unit outputs (0/1). Params:
//                  [lo_0, hi_0, lo_1, hi_1, ...]; a reversed pair is read as
//                  [min, max].
//
//   Tabular        uniform binning of a scalar observation. Params:
//                  [range_lo, range_hi, state_of_bin_0, ...]; bin count is
//                  units_per_layer[0], state assignments are rounded and
//                  clamped to [0, latent_dim). latent_dim doubles as the
//                  internal state count, and the latent coordinates are the
//                  one-hot state indicator.
//
//   MultiLayer     dense feed-forward net: input -> hidden layers (tanh) ->
//                  latent (affine). units_per_layer lists hidden widths and
//                  may be empty, which makes the map a single affine layer.
//                  The internal state is the nearest prototype row (ties to
//                  the lower index). Params: per layer, column-major weight
//                  matrix then bias vector.
//
// A GenerativeModel pairs an encoder with a mirror decoder (latent ->
// reversed hidden widths -> input, tanh on hidden, affine output) whose
// params use the same packing.

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "evonat/errors.hpp"

namespace evonat {

enum class ModelFamily { ThresholdUnit, Tabular, MultiLayer };
enum class Connectivity { Dense };

struct Architecture {
  ModelFamily family = ModelFamily::ThresholdUnit;
  std::vector<int> units_per_layer{1};
  int latent_dim = 1;
  int input_dim = 1;
  Connectivity connectivity = Connectivity::Dense;
  // When set, the encoder observes the world's fixed feature map of the
  // observation instead of the raw observation.
  bool preprocessing = false;
};

// Throws ConfigError when fields are inconsistent for the family.
void validate(const Architecture& arch);

// Length of the flat encoder parameter vector the architecture dictates.
int param_count(const Architecture& arch);
// Length of the mirror decoder parameter vector.
int decoder_param_count(const Architecture& arch);

struct TrainableParams {
  Eigen::VectorXd values;
};

struct EncoderModel {
  Architecture arch;
  TrainableParams params;
  double noise_rate = 0.0;
  // MultiLayer only: one row per internal state. Empty for other families.
  Eigen::MatrixXd prototypes;

  int num_states() const;
};

struct GenerativeModel {
  EncoderModel encoder;
  TrainableParams decoder_params;
};

struct ResourceCost {
  double memory_d = 0.0;   // stored parameter count
  double compute_c = 0.0;  // multiply-accumulates (comparisons) per encode
  double energy_rho = 0.0; // upkeep: alpha_u * units + alpha_w * weights
};

struct EnergyCoefficients {
  double alpha_u = 1.0;
  double alpha_w = 0.01;
};

// Throws ShapeError on a params/arch length mismatch or observation width
// mismatch; ConfigError on invalid arch.
void validate(const EncoderModel& model);
void validate(const GenerativeModel& model);

// Deterministic spread of k prototype rows in latent space: alternating
// +/- steps along the axes, pushed outward ring by ring.
Eigen::MatrixXd default_prototypes(int states, int latent_dim);

// Discrete internal state of an observation. The seed drives the noise
// stream (ThresholdUnit flips each unit with probability noise_rate), so a
// fixed (model, x, seed) triple always yields the same state.
int encode(const EncoderModel& model, const Eigen::VectorXd& x,
           std::uint64_t seed);

// Continuous latent coordinates, noise-free.
Eigen::VectorXd latent_coords(const EncoderModel& model,
                              const Eigen::VectorXd& x);

// Decoder output for a latent coordinate vector.
Eigen::VectorXd decode(const GenerativeModel& model,
                       const Eigen::VectorXd& latent);

// Static resource ledger of an architecture. Energy counts every hidden and
// latent unit plus alpha_w per weight; hidden-unit biases count as weights,
// latent offsets do not. Preprocessing adds one unit of upkeep and one pass
// over the input to compute_c.
ResourceCost resource_costs(const Architecture& arch,
                            const EnergyCoefficients& coeff = {});

// Largest observed expansion ratio |G(b) - G(a)| / |b - a| over the given
// latent pairs: an empirical lower bound on the decoder's Lipschitz
// constant. Pairs with identical endpoints are skipped; if every pair is
// identical, throws DegenerateInput.
double lipschitz_lower_bound(
    const GenerativeModel& model,
    std::span<const std::pair<Eigen::VectorXd, Eigen::VectorXd>> latent_pairs);

}  // namespace evonat
