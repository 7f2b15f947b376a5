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

#include "experiments/config.hpp"
#include "experiments/runner.hpp"

namespace conceptlab::experiments {

#define CONCEPTLAB_COMMANDS(X) \
  X(enumerate, "enumerate")    \
  X(gold_learn, "gold-learn")  \
  X(one_sided, "one-sided")    \
  X(parity_train, "parity-train") \
  X(falsify_ffn, "falsify-ffn") \
  X(rnn_parity, "rnn-parity")  \
  X(render, "render")          \
  X(mix, "mix")                \
  X(sense, "sense")            \
  X(game, "game")              \
  X(stats, "stats")

#define CONCEPTLAB_DECLARE(fn, name) RunResult run_##fn(std::string_view text);
CONCEPTLAB_COMMANDS(CONCEPTLAB_DECLARE)
#undef CONCEPTLAB_DECLARE

std::string fmt_double(double v);
// Finishes a result: appends config.json and fills summary_json if empty.
RunResult finish(Config& cfg, RunResult result, const json& summary);

}  // namespace conceptlab::experiments
