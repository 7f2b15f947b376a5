// Copyright 2026 The conceptlab Authors. All Rights Reserved.
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

#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"
#include "util/error.hpp"

namespace conceptlab::experiments {

using nlohmann::json;

// Typed access to a subcommand's parameters. Records every value read (with
// defaults filled in) so the run can echo its resolved configuration.
class Config {
 public:
  Config(std::string_view subcommand, std::string_view text, std::initializer_list<std::string_view> allowed);

  template <class T>
  T get(const char* key, T fallback) {
    if (!raw_.contains(key)) {
      resolved_[key] = fallback;
      return fallback;
    }
    try {
      T value = raw_[key].get<T>();
      resolved_[key] = raw_[key];
      return value;
    } catch (const json::exception&) {
      throw Error(ErrorCode::config, subcommand_ + ": parameter '" + key + "' has the wrong type");
    }
  }

  bool has(const char* key) const { return raw_.contains(key); }
  const json& raw(const char* key) {
    resolved_[key] = raw_.at(key);
    return raw_.at(key);
  }
  // Record a derived value in the resolved configuration.
  void note(const char* key, json value) { resolved_[key] = std::move(value); }
  const std::string& subcommand() const { return subcommand_; }
  std::string resolved() const { return resolved_.dump(2) + "\n"; }

 private:
  std::string subcommand_;
  json raw_;
  json resolved_ = json::object();
};

inline void check(bool cond, const std::string& message) { require(cond, message, ErrorCode::config); }

// A list parameter that may also be given as a single value or a
// comma-separated string.
template <class T>
std::vector<T> list_param(Config& cfg, const char* key, std::vector<T> fallback);

}  // namespace conceptlab::experiments
