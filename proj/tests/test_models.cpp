// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <Eigen/Core>

#include "evonat/fitness.hpp"
#include "evonat/models.hpp"
#include "evonat/rng.hpp"
#include "oracles.hpp"

using namespace evonat;

namespace {

EncoderModel one_unit(double lo, double hi, double noise = 0.0) {
  EncoderModel m;
  m.arch = Architecture{ModelFamily::ThresholdUnit, {1}, 1, 1};
  m.params.values = Eigen::Vector2d{lo, hi};
  m.noise_rate = noise;
  return m;
}

// Affine map on 2-D latent: hidden-free MultiLayer architecture.
GenerativeModel affine_decoder(const Eigen::Matrix2d& w,
                               const Eigen::Vector2d& b) {
  GenerativeModel g;
  g.encoder.arch = Architecture{ModelFamily::MultiLayer, {}, 2, 2};
  g.encoder.params.values = Eigen::VectorXd::Zero(param_count(g.encoder.arch));
  g.encoder.prototypes = default_prototypes(2, 2);
  Eigen::VectorXd p(6);
  p << w(0, 0), w(1, 0), w(0, 1), w(1, 1), b(0), b(1);
  g.decoder_params.values = p;
  return g;
}

}  // namespace

TEST_CASE("threshold unit fires inside its closed interval") {
  const EncoderModel m = one_unit(0.0, 1.0);
  CHECK(encode(m, Eigen::VectorXd::Constant(1, 0.5), 1) == 1);
  CHECK(encode(m, Eigen::VectorXd::Constant(1, 0.0), 1) == 1);
  CHECK(encode(m, Eigen::VectorXd::Constant(1, 1.0), 1) == 1);
  CHECK(encode(m, Eigen::VectorXd::Constant(1, -0.1), 1) == 0);
  CHECK(encode(m, Eigen::VectorXd::Constant(1, 1.7), 1) == 0);
  // Reversed bounds read as [min, max].
  const EncoderModel r = one_unit(1.0, 0.0);
  CHECK(encode(r, Eigen::VectorXd::Constant(1, 0.5), 1) == 1);
}

TEST_CASE("encode is reproducible and noise flips at the configured rate") {
  const EncoderModel m = one_unit(0.0, 1.0, 0.25);
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 0.5);
  const int first = encode(m, x, 42);
  for (int i = 0; i < 50; ++i) CHECK(encode(m, x, 42) == first);
  int flips = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i)
    if (encode(m, x, derive_seed(9, {static_cast<std::uint64_t>(i)})) == 0)
      ++flips;
  CHECK(flips / static_cast<double>(trials) ==
        doctest::Approx(0.25).epsilon(0.08));
}

TEST_CASE("multi-unit threshold patterns span the state space") {
  EncoderModel m;
  m.arch = Architecture{ModelFamily::ThresholdUnit, {2}, 2, 2};
  Eigen::VectorXd p(4);
  p << 0.5, 1.5, 0.5, 1.5;  // unit 0 reads x0, unit 1 reads x1
  m.params.values = p;
  CHECK(m.num_states() == 4);
  const auto at = [&](double a, double b) {
    return encode(m, Eigen::Vector2d{a, b}, 3);
  };
  CHECK(at(0, 0) == 0);
  CHECK(at(1, 0) == 1);
  CHECK(at(0, 1) == 2);
  CHECK(at(1, 1) == 3);
}

TEST_CASE("tabular encoder looks states up by bin") {
  EncoderModel m;
  m.arch = Architecture{ModelFamily::Tabular, {4}, 3, 1};
  Eigen::VectorXd p(6);
  p << 0.0, 4.0, 0.0, 1.0, 2.0, 1.0;
  m.params.values = p;
  CHECK(encode(m, Eigen::VectorXd::Constant(1, 0.5), 0) == 0);
  CHECK(encode(m, Eigen::VectorXd::Constant(1, 1.5), 0) == 1);
  CHECK(encode(m, Eigen::VectorXd::Constant(1, 2.5), 0) == 2);
  CHECK(encode(m, Eigen::VectorXd::Constant(1, 3.5), 0) == 1);
  // Out-of-range observations clamp to the edge bins.
  CHECK(encode(m, Eigen::VectorXd::Constant(1, -10.0), 0) == 0);
  CHECK(encode(m, Eigen::VectorXd::Constant(1, 10.0), 0) == 1);
  // One-hot latent coordinates.
  CHECK(latent_coords(m, Eigen::VectorXd::Constant(1, 2.5)) ==
        Eigen::Vector3d{0.0, 0.0, 1.0});
}

TEST_CASE("multilayer encoder assigns the nearest prototype") {
  EncoderModel m;
  m.arch = Architecture{ModelFamily::MultiLayer, {}, 2, 2};
  // Identity affine map.
  Eigen::VectorXd p(6);
  p << 1, 0, 0, 1, 0, 0;
  m.params.values = p;
  m.prototypes = default_prototypes(2, 2);  // (1,0) and (-1,0)
  CHECK(encode(m, Eigen::Vector2d{0.9, 0.2}, 0) == 0);
  CHECK(encode(m, Eigen::Vector2d{-0.9, 0.2}, 0) == 1);
  CHECK(latent_coords(m, Eigen::Vector2d{0.3, -1.2})
            .isApprox(Eigen::Vector2d{0.3, -1.2}, 0.0));
}

TEST_CASE("dimension mismatches are rejected") {
  const EncoderModel m = one_unit(0.0, 1.0);
  CHECK_THROWS_AS(encode(m, Eigen::Vector2d{0.5, 0.5}, 0), ShapeError);
  EncoderModel bad = m;
  bad.params.values = Eigen::Vector3d{0, 1, 2};
  CHECK_THROWS_AS(
      encode(bad, Eigen::VectorXd::Constant(1, 0.5), 0), ShapeError);
}

TEST_CASE("decoder reference maps") {
  // Identity decoder returns latent coordinates unchanged.
  const GenerativeModel ident =
      affine_decoder(Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero());
  const Eigen::Vector2d t{0.3, -1.2};
  CHECK(decode(ident, t) == t);

  // Constant decoder: zero weights, bias b.
  const GenerativeModel constant =
      affine_decoder(Eigen::Matrix2d::Zero(), Eigen::Vector2d{0.4, -0.7});
  CHECK(decode(constant, t) == Eigen::Vector2d{0.4, -0.7});

  // Linear decoder with twice the identity doubles the input.
  const GenerativeModel twice =
      affine_decoder(2.0 * Eigen::Matrix2d::Identity(),
                     Eigen::Vector2d::Zero());
  CHECK(decode(twice, Eigen::Vector2d{1.0, 1.0}) == Eigen::Vector2d{2.0, 2.0});
}

TEST_CASE("resource costs of reference architectures") {
  const Architecture tu{ModelFamily::ThresholdUnit, {1}, 1, 1};
  const ResourceCost c1 = resource_costs(tu);
  CHECK(c1.memory_d == 2.0);

  Architecture mlp{ModelFamily::MultiLayer, {4}, 2, 10};
  const ResourceCost c2 = resource_costs(mlp);
  CHECK(c2.memory_d == 54.0);      // 10*4+4 + 4*2+2
  CHECK(c2.compute_c == 48.0);     // multiply-accumulates
  CHECK(c2.energy_rho == doctest::Approx(6.52).epsilon(1e-12));

  // Memory grows strictly with every added unit.
  Architecture wider = mlp;
  wider.units_per_layer[0] += 1;
  CHECK(resource_costs(wider).memory_d > c2.memory_d);
  Architecture tu2{ModelFamily::ThresholdUnit, {2}, 2, 1};
  CHECK(resource_costs(tu2).memory_d > c1.memory_d);

  // Preprocessing costs one unit of upkeep plus an input pass.
  Architecture pre = mlp;
  pre.preprocessing = true;
  CHECK(resource_costs(pre).energy_rho ==
        doctest::Approx(c2.energy_rho + 1.0).epsilon(1e-12));
  CHECK(resource_costs(pre).compute_c == c2.compute_c + 10.0);
}

TEST_CASE("lipschitz lower bound on reference decoders") {
  using PairVec = std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>;
  Rng rng(5);
  PairVec pairs;
  for (int i = 0; i < 64; ++i) {
    Eigen::VectorXd a(2), b(2);
    for (int d = 0; d < 2; ++d) {
      a(d) = rng.uniform(-2, 2);
      b(d) = rng.uniform(-2, 2);
    }
    pairs.emplace_back(a, b);
  }

  const GenerativeModel constant =
      affine_decoder(Eigen::Matrix2d::Zero(), Eigen::Vector2d{1.0, 2.0});
  CHECK(lipschitz_lower_bound(constant, pairs) == 0.0);

  const GenerativeModel twice =
      affine_decoder(2.0 * Eigen::Matrix2d::Identity(),
                     Eigen::Vector2d::Zero());
  CHECK(lipschitz_lower_bound(twice, pairs) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // Never exceeds the operator norm of a linear decoder.
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Matrix2d w;
    w << rng.normal(), rng.normal(), rng.normal(), rng.normal();
    const GenerativeModel lin = affine_decoder(w, Eigen::Vector2d::Zero());
    CHECK(lipschitz_lower_bound(lin, pairs) <=
          oracles::operator_norm(w) + 1e-12);
  }

  const PairVec degenerate{{Eigen::Vector2d{1, 1}, Eigen::Vector2d{1, 1}}};
  CHECK_THROWS_AS(lipschitz_lower_bound(twice, degenerate), DegenerateInput);
}

TEST_CASE("fitness_of_model on synthetic two-state evidence") {
  // Constant encoder: a single internal state carries no information.
  const EncoderModel wide = one_unit(-100.0, 100.0);
  std::vector<LabeledSample> samples;
  Rng rng(77);
  for (int i = 0; i < 5000; ++i) {
    const bool friendly = rng.u01() < 0.7;
    LabeledSample s;
    s.x = Eigen::VectorXd::Constant(
        1, friendly ? rng.uniform(0.0, 1.0) : rng.uniform(1.0, 1.4286));
    s.label = friendly ? 0 : 1;
    samples.push_back(std::move(s));
  }
  const auto [joint0, f0] = fitness_of_model(wide, samples, 11);
  CHECK(f0.bits == 0.0);
  CHECK(joint0.table().rows() == 2);

  // A noisy but mostly-correct detector recovers most of the prior's
  // information; reference value for a 0.9-correct channel on (0.7, 0.3).
  std::vector<LabeledSample> big;
  for (int i = 0; i < 100000; ++i) {
    const bool friendly = rng.u01() < 0.7;
    LabeledSample s;
    s.x = Eigen::VectorXd::Constant(
        1, friendly ? rng.uniform(0.0, 1.0) : rng.uniform(1.0, 1.4286));
    s.label = friendly ? 0 : 1;
    big.push_back(std::move(s));
  }
  const EncoderModel noisy = one_unit(0.0, 1.0, 0.1);
  const auto [joint1, f1] = fitness_of_model(noisy, big, 13);
  CHECK(f1.bits == doctest::Approx(0.455823).epsilon(0).epsilon(0.022));
  // Same call, same seed: identical table.
  const auto [joint2, f2] = fitness_of_model(noisy, big, 13);
  CHECK(joint2.table() == joint1.table());
}
