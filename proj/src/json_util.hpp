// Copyright 2026 The nfvplace Authors
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

// Strict accessors over nlohmann::json shared by the file readers.

#ifndef NFVPLACE_SRC_JSON_UTIL_HPP
#define NFVPLACE_SRC_JSON_UTIL_HPP

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"
#include "nfvplace/error.hpp"

namespace nfvplace::detail {

using json = nlohmann::json;

[[noreturn]] inline void parse_fail(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

inline json parse_json_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

inline const json& require_object(const json& j, std::string_view where) {
  if (!j.is_object()) parse_fail(std::string(where) + ": expected an object");
  return j;
}

inline void reject_unknown_keys(const json& j, std::string_view where,
                                std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) parse_fail(std::string(where) + ": unknown key '" + key + "'");
  }
}

inline const json& require_key(const json& j, std::string_view where,
                               const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    parse_fail(std::string(where) + ": missing key '" + key + "'");
  return *it;
}

inline long long get_integer(const json& j, std::string_view where) {
  if (!j.is_number_integer())
    parse_fail(std::string(where) + ": expected an integer");
  return j.get<long long>();
}

inline double get_number(const json& j, std::string_view where) {
  if (!j.is_number()) parse_fail(std::string(where) + ": expected a number");
  return j.get<double>();
}

inline std::string get_string(const json& j, std::string_view where) {
  if (!j.is_string()) parse_fail(std::string(where) + ": expected a string");
  return j.get<std::string>();
}

inline const json& require_array(const json& j, std::string_view where) {
  if (!j.is_array()) parse_fail(std::string(where) + ": expected an array");
  return j;
}

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace nfvplace::detail

#endif  // NFVPLACE_SRC_JSON_UTIL_HPP
