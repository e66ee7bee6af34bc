// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// JSON documents for models, worlds, and run settings.
//
// Model documents carry {family, dims, params, noise_rate, prototypes}
// (plus decoder_params for generative models) and round-trip parameter
// vectors bit-exactly: numbers are emitted with shortest-round-trip
// formatting, so from_json(to_json(m)) reproduces every double bit for bit.
// Malformed or inconsistent documents raise ConfigError.

#include <string>

#include "evonat/collective.hpp"
#include "evonat/conceptualization.hpp"
#include "evonat/constraints.hpp"
#include "evonat/evolution.hpp"
#include "evonat/models.hpp"
#include "evonat/training.hpp"
#include "evonat/worlds.hpp"
#include "json.hpp"

namespace evonat {

using Json = nlohmann::json;

// Wraps nlohmann parse errors in ConfigError.
Json parse_json(const std::string& text);

Json arch_to_json(const Architecture& arch);
Architecture arch_from_json(const Json& j);

Json model_to_json(const EncoderModel& model);
EncoderModel model_from_json(const Json& j);

Json model_to_json(const GenerativeModel& model);
GenerativeModel generative_from_json(const Json& j);

Json world_to_json(const World& w);
World world_from_json(const Json& j);

Json constraints_to_json(const ConstraintSet& cs);
ConstraintSet constraints_from_json(const Json& j);

Json budget_to_json(const TrainBudget& budget);
TrainBudget budget_from_json(const Json& j);

// Evolution knobs; the initial architecture travels inline as "initial_arch".
Json evolution_to_json(const EvolutionConfig& config);
EvolutionConfig evolution_from_json(const Json& j);

// Analysis summary of an intermix region (mixed-cell list sorted).
Json intermix_to_json(const IntermixRegion& region);

Json roster_to_json(const FitnessRoster& roster);
FitnessRoster roster_from_json(const Json& j);

}  // namespace evonat
