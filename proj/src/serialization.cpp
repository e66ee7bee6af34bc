// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#include "evonat/serialization.hpp"

#include <string>
#include <utility>
#include <vector>

namespace evonat {

namespace {

[[noreturn]] void bad_document(const std::string& what) {
  throw ConfigError("json document: " + what);
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) bad_document("expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const Json& item : j) {
    if (!item.is_number()) bad_document("expected an array of numbers");
    v(i++) = item.get<double>();
  }
  return v;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array()) bad_document("expected an array of rows");
  if (j.empty()) return {};
  const std::size_t cols = j.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()),
                    static_cast<Eigen::Index>(cols));
  Eigen::Index r = 0;
  for (const Json& row : j) {
    if (!row.is_array() || row.size() != cols) {
      bad_document("matrix rows must be arrays of equal length");
    }
    Eigen::Index c = 0;
    for (const Json& item : row) m(r, c++) = item.get<double>();
    ++r;
  }
  return m;
}

const Json& require(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) bad_document(std::string("missing field '") + key + "'");
  return *it;
}

std::string family_name(ModelFamily family) {
  switch (family) {
    case ModelFamily::ThresholdUnit: return "threshold_unit";
    case ModelFamily::Tabular: return "tabular";
    case ModelFamily::MultiLayer: return "multilayer";
  }
  bad_document("unknown model family");
}

ModelFamily family_from_name(const std::string& name) {
  if (name == "threshold_unit") return ModelFamily::ThresholdUnit;
  if (name == "tabular") return ModelFamily::Tabular;
  if (name == "multilayer") return ModelFamily::MultiLayer;
  bad_document("unknown model family '" + name + "'");
}

std::string kind_name(WorldKind kind) {
  switch (kind) {
    case WorldKind::TwoState: return "two_state";
    case WorldKind::MultiInterval: return "multi_interval";
    case WorldKind::Logic: return "logic";
    case WorldKind::GaussianMixture: return "gaussian_mixture";
    case WorldKind::Shape: return "shape";
  }
  bad_document("unknown world kind");
}

WorldKind kind_from_name(const std::string& name) {
  if (name == "two_state") return WorldKind::TwoState;
  if (name == "multi_interval") return WorldKind::MultiInterval;
  if (name == "logic") return WorldKind::Logic;
  if (name == "gaussian_mixture") return WorldKind::GaussianMixture;
  if (name == "shape") return WorldKind::Shape;
  bad_document("unknown world kind '" + name + "'");
}

std::string logic_name(LogicFunction fn) {
  switch (fn) {
    case LogicFunction::Xor: return "xor";
    case LogicFunction::And: return "and";
    case LogicFunction::Or: return "or";
  }
  bad_document("unknown logic function");
}

LogicFunction logic_from_name(const std::string& name) {
  if (name == "xor") return LogicFunction::Xor;
  if (name == "and") return LogicFunction::And;
  if (name == "or") return LogicFunction::Or;
  bad_document("unknown logic function '" + name + "'");
}

}  // namespace

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) bad_document("malformed JSON text");
  return j;
}

Json arch_to_json(const Architecture& arch) {
  Json dims;
  dims["units_per_layer"] = arch.units_per_layer;
  dims["latent_dim"] = arch.latent_dim;
  dims["input_dim"] = arch.input_dim;
  dims["preprocessing"] = arch.preprocessing;
  Json j;
  j["family"] = family_name(arch.family);
  j["dims"] = std::move(dims);
  return j;
}

Architecture arch_from_json(const Json& j) {
  try {
    Architecture arch;
    arch.family = family_from_name(require(j, "family").get<std::string>());
    const Json& dims = require(j, "dims");
    arch.units_per_layer =
        require(dims, "units_per_layer").get<std::vector<int>>();
    arch.latent_dim = require(dims, "latent_dim").get<int>();
    arch.input_dim = require(dims, "input_dim").get<int>();
    arch.preprocessing = dims.value("preprocessing", false);
    validate(arch);
    return arch;
  } catch (const Json::exception& e) {
    bad_document(e.what());
  }
}

Json model_to_json(const EncoderModel& model) {
  Json j = arch_to_json(model.arch);
  j["params"] = vector_to_json(model.params.values);
  j["noise_rate"] = model.noise_rate;
  j["prototypes"] = matrix_to_json(model.prototypes);
  return j;
}

EncoderModel model_from_json(const Json& j) {
  try {
    EncoderModel model;
    model.arch = arch_from_json(j);
    model.params.values = vector_from_json(require(j, "params"));
    model.noise_rate = j.value("noise_rate", 0.0);
    if (j.contains("prototypes")) {
      model.prototypes = matrix_from_json(j["prototypes"]);
    }
    validate(model);
    return model;
  } catch (const Json::exception& e) {
    bad_document(e.what());
  }
}

Json model_to_json(const GenerativeModel& model) {
  Json j = model_to_json(model.encoder);
  j["decoder_params"] = vector_to_json(model.decoder_params.values);
  return j;
}

GenerativeModel generative_from_json(const Json& j) {
  try {
    GenerativeModel model;
    model.encoder = model_from_json(j);
    model.decoder_params.values = vector_from_json(require(j, "decoder_params"));
    validate(model);
    return model;
  } catch (const Json::exception& e) {
    bad_document(e.what());
  }
}

Json world_to_json(const World& w) {
  Json j;
  j["kind"] = kind_name(w.kind);
  j["seed"] = w.seed;
  if (w.priors.size() > 0) j["priors"] = vector_to_json(w.priors);
  if (!w.habitable_intervals.empty()) {
    Json intervals = Json::array();
    for (const auto& [lo, hi] : w.habitable_intervals) {
      intervals.push_back(Json::array({lo, hi}));
    }
    j["habitable_intervals"] = std::move(intervals);
  }
  if (w.kind == WorldKind::Logic) {
    j["logic_fn"] = logic_name(w.logic_fn);
    j["exhaustive_corners"] = w.exhaustive_corners;
  }
  if (w.kind == WorldKind::GaussianMixture) {
    j["dim"] = w.dim;
    j["separation"] = w.separation;
  }
  return j;
}

World world_from_json(const Json& j) {
  try {
    World w;
    w.kind = kind_from_name(require(j, "kind").get<std::string>());
    w.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("priors")) w.priors = vector_from_json(j["priors"]);
    if (j.contains("habitable_intervals")) {
      for (const Json& pair : j["habitable_intervals"]) {
        if (!pair.is_array() || pair.size() != 2) {
          bad_document("habitable_intervals entries must be [lo, hi] pairs");
        }
        w.habitable_intervals.emplace_back(pair[0].get<double>(),
                                           pair[1].get<double>());
      }
    }
    if (j.contains("logic_fn")) {
      w.logic_fn = logic_from_name(j["logic_fn"].get<std::string>());
    }
    w.exhaustive_corners = j.value("exhaustive_corners", false);
    w.dim = j.value("dim", 10);
    w.separation = j.value("separation", 3.0);
    validate(w);
    return w;
  } catch (const Json::exception& e) {
    bad_document(e.what());
  }
}

Json constraints_to_json(const ConstraintSet& cs) {
  Json j;
  j["d_max"] = cs.d_max;
  j["d_con"] = cs.d_con;
  j["rho_max"] = cs.rho_max;
  if (cs.c_min) j["c_min"] = *cs.c_min;
  return j;
}

ConstraintSet constraints_from_json(const Json& j) {
  try {
    ConstraintSet cs;
    cs.d_max = require(j, "d_max").get<double>();
    cs.d_con = require(j, "d_con").get<double>();
    cs.rho_max = require(j, "rho_max").get<double>();
    if (j.contains("c_min")) cs.c_min = j["c_min"].get<double>();
    validate(cs);
    return cs;
  } catch (const Json::exception& e) {
    bad_document(e.what());
  }
}

Json budget_to_json(const TrainBudget& budget) {
  Json j;
  j["max_evaluations"] = budget.max_evaluations;
  j["step_scale"] = budget.step_scale;
  j["seed"] = budget.seed;
  return j;
}

TrainBudget budget_from_json(const Json& j) {
  try {
    TrainBudget budget;
    budget.max_evaluations = j.value("max_evaluations", 1000);
    budget.step_scale = j.value("step_scale", 0.25);
    budget.seed = j.value("seed", std::uint64_t{0});
    validate(budget);
    return budget;
  } catch (const Json::exception& e) {
    bad_document(e.what());
  }
}

Json evolution_to_json(const EvolutionConfig& config) {
  Json j;
  j["initial_arch"] = arch_to_json(config.initial_arch);
  j["population_size"] = config.population_size;
  j["variation_probability"] = config.variation_probability;
  j["train_budget"] = budget_to_json(config.train_budget);
  j["eval_samples"] = config.eval_samples;
  j["noise_margin"] = config.noise_margin;
  j["variation_energy_cost"] = config.variation_energy_cost;
  j["selection"] = config.selection == SelectionRule::truncation
                       ? "truncation"
                       : "tournament";
  j["tournament_size"] = config.tournament_size;
  j["model_noise_rate"] = config.model_noise_rate;
  j["workers"] = config.workers;
  return j;
}

EvolutionConfig evolution_from_json(const Json& j) {
  try {
    EvolutionConfig config;
    if (j.contains("initial_arch")) {
      config.initial_arch = arch_from_json(j["initial_arch"]);
    }
    config.population_size = j.value("population_size", 8);
    config.variation_probability = j.value("variation_probability", 0.5);
    if (j.contains("train_budget")) {
      config.train_budget = budget_from_json(j["train_budget"]);
    }
    config.eval_samples = j.value("eval_samples", 2000);
    config.noise_margin = j.value("noise_margin", 0.02);
    config.variation_energy_cost = j.value("variation_energy_cost", 0.0);
    const std::string rule = j.value("selection", "truncation");
    if (rule == "truncation") {
      config.selection = SelectionRule::truncation;
    } else if (rule == "tournament") {
      config.selection = SelectionRule::tournament;
    } else {
      bad_document("unknown selection rule '" + rule + "'");
    }
    config.tournament_size = j.value("tournament_size", 2);
    config.model_noise_rate = j.value("model_noise_rate", 0.0);
    config.workers = j.value("workers", 1);
    validate(config);
    return config;
  } catch (const Json::exception& e) {
    bad_document(e.what());
  }
}

Json intermix_to_json(const IntermixRegion& region) {
  Json cells = Json::array();
  for (const std::vector<int>& cell : region.mixed_cells) {
    cells.push_back(cell);
  }
  Json j;
  j["grid_resolution"] = region.grid_resolution;
  j["mu_x"] = region.mu_x;
  j["beta_ratio_threshold"] = region.beta_ratio_threshold;
  j["mixed_cells"] = std::move(cells);
  j["mixed_cell_count"] = region.mixed_cells.size();
  return j;
}

Json roster_to_json(const FitnessRoster& roster) {
  Json j;
  j["values"] = roster.values;
  return j;
}

FitnessRoster roster_from_json(const Json& j) {
  try {
    FitnessRoster roster;
    roster.values = require(j, "values").get<std::vector<double>>();
    if (roster.values.empty()) bad_document("roster needs at least one value");
    validate(roster);
    return roster;
  } catch (const Json::exception& e) {
    bad_document(e.what());
  }
}

}  // namespace evonat
