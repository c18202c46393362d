// Copyright 2026 The Erratum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <set>
#include <string>

#include "erratum/error.h"
#include "erratum/sftm.h"

namespace erratum {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid matcher configuration: " + what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void SftmConfig::validate() const {
  require(positive(weight_exponent), "weightExponent must be positive");
  require(positive(prune_floor), "pruneFloor must be positive");
  require(std::isfinite(propagation_weight) && propagation_weight >= 0.0,
          "propagationWeight must be non-negative");
  require(propagation_passes >= 1, "propagationPasses must be at least 1");
  require(max_children_compared >= 1, "maxChildrenCompared must be positive");
  require(std::isfinite(iteration_factor) && iteration_factor >= 0.0,
          "iterationFactor must be non-negative");
  require(min_iterations >= 0 && max_iterations >= min_iterations,
          "iteration bounds must satisfy 0 <= min <= max");
  require(!initial_temperature || positive(*initial_temperature),
          "initialTemperature must be positive");
  require(positive(cooling) && cooling <= 1.0, "cooling must be in (0, 1]");
  require(!penalty || (std::isfinite(*penalty) && *penalty >= 0.0),
          "penalty must be non-negative");
  require(std::isfinite(penalty_factor) && penalty_factor >= 0.0,
          "penaltyFactor must be non-negative");
}

nlohmann::ordered_json config_to_json(const SftmConfig& c) {
  nlohmann::ordered_json j;
  j["tokenizer"] = {{"includeText", c.tokenizer.include_text},
                    {"splitMultiValued", c.tokenizer.split_multi_valued},
                    {"ignoredAttributes", c.tokenizer.ignored_attributes}};
  j["weightExponent"] = c.weight_exponent;
  j["pruneFloor"] = c.prune_floor;
  j["propagationWeight"] = c.propagation_weight;
  j["propagationPasses"] = c.propagation_passes;
  j["maxChildrenCompared"] = c.max_children_compared;
  j["iterationFactor"] = c.iteration_factor;
  j["minIterations"] = c.min_iterations;
  j["maxIterations"] = c.max_iterations;
  j["initialTemperature"] = c.initial_temperature
                                ? nlohmann::ordered_json(*c.initial_temperature)
                                : nlohmann::ordered_json(nullptr);
  j["cooling"] = c.cooling;
  j["penalty"] = c.penalty ? nlohmann::ordered_json(*c.penalty)
                           : nlohmann::ordered_json(nullptr);
  j["penaltyFactor"] = c.penalty_factor;
  j["seed"] = c.seed;
  return j;
}

SftmConfig config_from_json(const nlohmann::ordered_json& j, SftmConfig c) {
  if (!j.is_object()) throw ConfigError("matcher configuration must be an object");
  static const std::set<std::string> kKeys = {
      "tokenizer",        "weightExponent",     "pruneFloor",
      "propagationWeight", "propagationPasses", "maxChildrenCompared",
      "iterationFactor",  "minIterations",      "maxIterations",
      "initialTemperature", "cooling",
      "penalty",          "penaltyFactor",      "seed"};
  for (const auto& [k, v] : j.items()) {
    if (!kKeys.count(k)) throw ConfigError("unknown matcher option '" + k + "'");
  }
  try {
    if (j.contains("tokenizer")) {
      const auto& t = j.at("tokenizer");
      for (const auto& [k, v] : t.items()) {
        if (k != "includeText" && k != "splitMultiValued" &&
            k != "ignoredAttributes") {
          throw ConfigError("unknown tokenizer option '" + k + "'");
        }
      }
      c.tokenizer.include_text = t.value("includeText", c.tokenizer.include_text);
      c.tokenizer.split_multi_valued =
          t.value("splitMultiValued", c.tokenizer.split_multi_valued);
      c.tokenizer.ignored_attributes =
          t.value("ignoredAttributes", c.tokenizer.ignored_attributes);
    }
    c.weight_exponent = j.value("weightExponent", c.weight_exponent);
    c.prune_floor = j.value("pruneFloor", c.prune_floor);
    c.propagation_weight = j.value("propagationWeight", c.propagation_weight);
    c.propagation_passes = j.value("propagationPasses", c.propagation_passes);
    c.max_children_compared =
        j.value("maxChildrenCompared", c.max_children_compared);
    c.iteration_factor = j.value("iterationFactor", c.iteration_factor);
    c.min_iterations = j.value("minIterations", c.min_iterations);
    c.max_iterations = j.value("maxIterations", c.max_iterations);
    if (j.contains("initialTemperature")) {
      const auto& v = j.at("initialTemperature");
      c.initial_temperature =
          v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
    }
    c.cooling = j.value("cooling", c.cooling);
    if (j.contains("penalty")) {
      const auto& v = j.at("penalty");
      c.penalty = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
    }
    c.penalty_factor = j.value("penaltyFactor", c.penalty_factor);
    c.seed = j.value("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed matcher configuration: ") +
                      e.what());
  }
  c.validate();
  return c;
}

}  // namespace erratum
