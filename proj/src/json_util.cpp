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

#include "json_util.hpp"

#include "skelbench/error.hpp"

namespace skelbench {

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
    return j[key];
}

double get_number(const nlohmann::json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number()) throw SchemaError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

std::uint64_t get_unsigned(const nlohmann::json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number_unsigned()) throw SchemaError(std::string("'") + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string get_string(const nlohmann::json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_string()) throw SchemaError(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

bool get_bool(const nlohmann::json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_boolean()) throw SchemaError(std::string("'") + key + "' must be true or false");
    return v.get<bool>();
}

nlohmann::ordered_json preproc_spec_to_json(const PreprocSpec& spec) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(spec.kind);
    j["target_len"] = spec.target_len;
    return j;
}

PreprocSpec preproc_spec_from_json(const nlohmann::json& j) {
    PreprocSpec spec;
    spec.kind = parse_preproc_kind(get_string(j, "kind"));
    spec.target_len = get_unsigned(j, "target_len");
    spec.validate();
    return spec;
}

}  // namespace skelbench
