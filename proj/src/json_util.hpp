/* Copyright 2026 The skelbench Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
// JSON converters shared between modules. Internal to the library.

#ifndef SKELBENCH_SRC_JSON_UTIL_HPP
#define SKELBENCH_SRC_JSON_UTIL_HPP

#include <json.hpp>

#include "skelbench/degrade.hpp"
#include "skelbench/model.hpp"
#include "skelbench/preproc.hpp"

namespace skelbench {

nlohmann::ordered_json degradation_spec_to_json(const DegradationSpec& spec);
DegradationSpec degradation_spec_from_json(const nlohmann::json& j);

nlohmann::ordered_json preproc_spec_to_json(const PreprocSpec& spec);
PreprocSpec preproc_spec_from_json(const nlohmann::json& j);

nlohmann::ordered_json pipeline_to_json(const FeaturePipeline& pipeline);
FeaturePipeline pipeline_from_json(const nlohmann::json& j);

nlohmann::ordered_json train_config_to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const nlohmann::json& j);

// Typed member access; throws SchemaError naming `key` when absent or of the wrong type.
const nlohmann::json& require(const nlohmann::json& j, const char* key);
double get_number(const nlohmann::json& j, const char* key);
std::uint64_t get_unsigned(const nlohmann::json& j, const char* key);
std::string get_string(const nlohmann::json& j, const char* key);
bool get_bool(const nlohmann::json& j, const char* key);

}  // namespace skelbench

#endif  // SKELBENCH_SRC_JSON_UTIL_HPP
