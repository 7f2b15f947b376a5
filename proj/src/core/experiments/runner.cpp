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

#include <charconv>
#include "experiments/runner.hpp"

#include <cstdio>
#include <sstream>

#include "experiments/commands.hpp"

namespace conceptlab::experiments {

Config::Config(std::string_view subcommand, std::string_view text, std::initializer_list<std::string_view> allowed)
    : subcommand_(subcommand) {
  try {
    raw_ = text.empty() ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::config, subcommand_ + ": config is not valid JSON: " + e.what());
  }
  check(raw_.is_object(), subcommand_ + ": config must be a JSON object");
  for (const auto& [key, value] : raw_.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || a == key;
    check(known, subcommand_ + ": unknown parameter '" + key + "'");
  }
}

namespace {

template <class T>
T parse_item(const std::string& s);

template <>
std::uint64_t parse_item(const std::string& s) {
  std::size_t used = 0;
  const auto v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

template <>
double parse_item(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

template <>
std::string parse_item(const std::string& s) {
  return s;
}

}  // namespace

template <class T>
std::vector<T> list_param(Config& cfg, const char* key, std::vector<T> fallback) {
  std::vector<T> out;
  if (!cfg.has(key)) {
    out = std::move(fallback);
  } else {
    const json& v = cfg.raw(key);
    try {
      if (v.is_array()) {
        out = v.get<std::vector<T>>();
      } else if (v.is_string()) {
        std::stringstream ss(v.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) {
          if (!item.empty()) out.push_back(parse_item<T>(item));
        }
      } else {
        out.push_back(v.get<T>());
      }
    } catch (const std::exception&) {
      throw Error(ErrorCode::config, cfg.subcommand() + ": parameter '" + key + "' is not a valid list");
    }
  }
  check(!out.empty(), cfg.subcommand() + ": parameter '" + key + "' is empty");
  cfg.note(key, out);
  return out;
}

template std::vector<std::uint64_t> list_param(Config&, const char*, std::vector<std::uint64_t>);
template std::vector<double> list_param(Config&, const char*, std::vector<double>);
template std::vector<std::string> list_param(Config&, const char*, std::vector<std::string>);

std::string fmt_double(double v) {
  // Shortest text that parses back to the same double.
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

RunResult finish(Config& cfg, RunResult result, const json& summary) {
  json s = summary;
  s["subcommand"] = cfg.subcommand();
  result.summary_json = s.dump();
  result.artifacts.push_back({"summary.json", s.dump(2) + "\n"});
  result.artifacts.push_back({"config.json", cfg.resolved()});
  return result;
}

const std::vector<std::string_view>& subcommands() {
  static const std::vector<std::string_view> names = {
#define CONCEPTLAB_NAME(fn, name) name,
      CONCEPTLAB_COMMANDS(CONCEPTLAB_NAME)
#undef CONCEPTLAB_NAME
  };
  return names;
}

RunResult run(std::string_view subcommand, std::string_view config_json) {
#define CONCEPTLAB_DISPATCH(fn, name) \
  if (subcommand == name) return run_##fn(config_json);
  CONCEPTLAB_COMMANDS(CONCEPTLAB_DISPATCH)
#undef CONCEPTLAB_DISPATCH
  throw Error(ErrorCode::config, "unknown subcommand '" + std::string(subcommand) + "'");
}

}  // namespace conceptlab::experiments
