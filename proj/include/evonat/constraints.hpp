// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
//
// Feasibility checks, Lagrangian evaluation, and Kuhn-Tucker residuals for
// resource-bounded architectures.
//
// Constraint structure. An architecture is feasible when
//   memory_d(arch)  <= d_max    ("memory")
//   latent_dim      <= d_con    ("dimension" - effective-compression bound)
//   energy_rho(arch) <= rho_max ("energy")
// All three are closed inequalities: sitting exactly on a bound is feasible.
// An optional c_min records a minimum conceptualization score; it is carried
// in configuration and checked by callers that have a separation score in
// hand (the dimension bound is the default stand-in for it).
//
// Multiplier naming. `eta_con` multiplies the dimension slack and `mu_k[0]`
// multiplies the energy slack, matching the stationarity form
//   |dF/dl - eta*dd/dl - mu*dp/dl|
// used by kkt_check. Slacks are signed (bound minus value, positive inside
// the feasible region); the Lagrangian uses raw signed slacks, no clamping.
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evonat/errors.hpp"
#include "evonat/models.hpp"

namespace evonat {

struct ConstraintSet {
  double d_max = 0.0;    // memory bound on parameter count
  double d_con = 0.0;    // latent dimensionality bound
  double rho_max = 0.0;  // energy bound
  std::optional<double> c_min;  // minimum conceptualization score
};

inline void validate(const ConstraintSet& cs) {
  const bool finite = std::isfinite(cs.d_max) && std::isfinite(cs.d_con) &&
                      std::isfinite(cs.rho_max) &&
                      (!cs.c_min || std::isfinite(*cs.c_min));
  if (!finite) throw ConfigError("ConstraintSet: bounds must be finite");
  if (cs.d_max <= 0.0 || cs.d_con <= 0.0 || cs.rho_max <= 0.0)
    throw ConfigError("ConstraintSet: bounds must be positive");
}

struct Multipliers {
  double eta_con = 0.0;        // dimension (effective compression) multiplier
  std::vector<double> mu_k;    // energy multiplier first, then extras
};

inline void validate(const Multipliers& m) {
  if (!std::isfinite(m.eta_con) || m.eta_con < 0.0)
    throw ConfigError("Multipliers: eta_con must be finite and >= 0");
  for (double mu : m.mu_k)
    if (!std::isfinite(mu) || mu < 0.0)
      throw ConfigError("Multipliers: mu_k must be finite and >= 0");
}

struct FeasibilityReport {
  bool ok = true;
  std::vector<std::string> violations;  // subset of {memory,dimension,energy}
};

inline FeasibilityReport feasible(const Architecture& arch,
                                  const ConstraintSet& cs,
                                  const EnergyCoefficients& coeff = {}) {
  validate(arch);
  validate(cs);
  const ResourceCost cost = resource_costs(arch, coeff);
  FeasibilityReport report;
  if (cost.memory_d > cs.d_max) report.violations.emplace_back("memory");
  if (static_cast<double>(arch.latent_dim) > cs.d_con)
    report.violations.emplace_back("dimension");
  if (cost.energy_rho > cs.rho_max) report.violations.emplace_back("energy");
  report.ok = report.violations.empty();
  return report;
}

// L = F - eta_con * (latent_dim - d_con) - mu_k[0] * (rho - rho_max).
// Slacks are signed; a model exactly on a bound contributes nothing.
inline double lagrangian(double fitness_bits, const Architecture& arch,
                         const ConstraintSet& cs, const Multipliers& m,
                         const EnergyCoefficients& coeff = {}) {
  validate(m);
  validate(cs);
  const ResourceCost cost = resource_costs(arch, coeff);
  double value = fitness_bits;
  value -= m.eta_con * (static_cast<double>(arch.latent_dim) - cs.d_con);
  const double mu_energy = m.mu_k.empty() ? 0.0 : m.mu_k.front();
  value -= mu_energy * (cost.energy_rho - cs.rho_max);
  return value;
}

struct KktGradients {
  double dd_dlambda = 0.0;  // change in dimension cost per structural unit
  double dp_dlambda = 0.0;  // change in energy cost per structural unit
};

struct KktSlacks {
  double memory = 0.0;  // bound minus value; positive means interior
  double energy = 0.0;
};

struct KktReport {
  double stationarity_residual = 0.0;
  double complementary_slackness_residual = 0.0;
  bool primal_feasible = false;
  bool dual_feasible = false;
};

inline KktReport kkt_check(double objective_gradient,
                           const KktGradients& grads, const Multipliers& m,
                           const KktSlacks& slacks) {
  if (!std::isfinite(objective_gradient) || !std::isfinite(grads.dd_dlambda) ||
      !std::isfinite(grads.dp_dlambda))
    throw NumericalError("kkt_check: non-finite gradient");
  const double mu_energy = m.mu_k.empty() ? 0.0 : m.mu_k.front();
  KktReport report;
  report.stationarity_residual =
      std::abs(objective_gradient - m.eta_con * grads.dd_dlambda -
               mu_energy * grads.dp_dlambda);
  report.complementary_slackness_residual =
      std::abs(m.eta_con * slacks.memory) + std::abs(mu_energy * slacks.energy);
  report.primal_feasible = slacks.memory >= 0.0 && slacks.energy >= 0.0;
  bool dual = m.eta_con >= 0.0;
  for (double mu : m.mu_k) dual = dual && mu >= 0.0;
  report.dual_feasible = dual;
  return report;
}

// Upper bound on the fitness gain from adding one structural unit:
// eta_c * G_d + alpha_c, where G_d is the marginal dimension cost of the
// unit and alpha_c the conceptualization term (zero at stagnation,
// negative in decline).
inline double fitness_gain_bound(double eta_c, double g_d, double alpha_c) {
  if (!std::isfinite(eta_c) || eta_c < 0.0)
    throw ConfigError("fitness_gain_bound: eta_c must be finite and >= 0");
  return eta_c * g_d + alpha_c;
}

// Finite-difference structural gradients along the "one more unit" axis,
// step = 1 unit. The grown architecture adds one threshold unit, one table
// bin, one unit to the last hidden layer, or (for a hidden-free map) one
// latent dimension.
inline Architecture grow_by_one_unit(const Architecture& arch) {
  Architecture grown = arch;
  switch (arch.family) {
    case ModelFamily::ThresholdUnit:
      grown.units_per_layer[0] += 1;
      grown.latent_dim += 1;
      break;
    case ModelFamily::Tabular:
      grown.units_per_layer[0] += 1;
      break;
    case ModelFamily::MultiLayer:
      if (grown.units_per_layer.empty())
        grown.latent_dim += 1;
      else
        grown.units_per_layer.back() += 1;
      break;
  }
  return grown;
}

inline KktGradients structural_gradients(const Architecture& arch,
                                         const EnergyCoefficients& coeff = {}) {
  const ResourceCost base = resource_costs(arch, coeff);
  const ResourceCost grown = resource_costs(grow_by_one_unit(arch), coeff);
  KktGradients grads;
  grads.dd_dlambda = grown.memory_d - base.memory_d;
  grads.dp_dlambda = grown.energy_rho - base.energy_rho;
  return grads;
}

}  // namespace evonat
