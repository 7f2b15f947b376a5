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

#include <string>
#include <string_view>
#include <vector>

namespace conceptlab::experiments {

struct Artifact {
  std::string name;  // relative path, '/' separated
  std::string bytes;
};

struct RunResult {
  std::string summary;       // one line
  std::string summary_json;  // machine-readable counterpart
  std::vector<Artifact> artifacts;
};

// Runs one experiment. `config_json` is an object of subcommand parameters;
// unknown keys are a config error. Every run also emits config.json with the
// fully resolved parameters, which replays the run when passed back in.
RunResult run(std::string_view subcommand, std::string_view config_json);

const std::vector<std::string_view>& subcommands();

}  // namespace conceptlab::experiments
