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

#include "concept/concept.hpp"

#include "json.hpp"

#include "util/error.hpp"

namespace conceptlab {

Concept::Concept(dsl::Program encoding, Natural cache_limit)
    : encoding_(std::move(encoding)), cache_(cache_limit) {
  for (Natural n = 0; n < cache_limit; ++n) cache_[n] = dsl::eval(encoding_, n);
}

bool Concept::contains(Natural n) const {
  if (n < cache_.size()) return cache_[n];
  return dsl::eval(encoding_, n);
}

bool extension_equal_on_prefix(const dsl::Program& a, const dsl::Program& b, Natural limit) {
  if (a == b) return true;
  for (Natural n = 0; n <= limit; ++n) {
    if (dsl::eval(a, n) != dsl::eval(b, n)) return false;
  }
  return true;
}

std::string_view stream_mode_name(StreamMode mode) {
  return mode == StreamMode::complete_supervised ? "complete" : "one-sided";
}

StreamMode parse_stream_mode(std::string_view name) {
  if (name == "complete") return StreamMode::complete_supervised;
  if (name == "one-sided") return StreamMode::one_sided_positive;
  throw Error(ErrorCode::config, "unknown stream mode '" + std::string(name) + "'");
}

EffluxStream::EffluxStream(Concept target, StreamMode mode, Natural search_budget)
    : concept_(std::move(target)), mode_(mode), search_budget_(search_budget) {
  if (mode_ == StreamMode::one_sided_positive) cursor_ = 1;
}

Observation EffluxStream::next() {
  if (mode_ == StreamMode::complete_supervised) {
    const Natural x = cursor_++;
    return {x, concept_.contains(x)};
  }
  const Natural start = cursor_;
  for (Natural n = start; n - start < search_budget_; ++n) {
    if (concept_.contains(n)) {
      cursor_ = n + 1;
      return {n, true};
    }
  }
  cursor_ = start + search_budget_;
  throw Error(ErrorCode::exhausted, "one-sided stream exhausted: no member in [" +
                                        std::to_string(start) + ", " +
                                        std::to_string(start + search_budget_) + ")");
}

std::variant<Natural, BudgetExceeded> Generator::next(Natural budget) {
  for (Natural scanned = 0; scanned < budget; ++scanned) {
    const Natural n = next_candidate_++;
    if (dsl::eval(program_, n)) return n;
  }
  return BudgetExceeded{budget};
}

Generator discriminator_to_generator(const dsl::Program& program) { return Generator(program); }

std::string observations_to_csv(const std::vector<Observation>& observations) {
  std::string out = "x,y\n";
  for (const auto& o : observations) {
    out += std::to_string(o.x);
    out += ',';
    if (o.y) out += *o.y ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string observations_to_jsonl(const std::vector<Observation>& observations) {
  std::string out;
  for (const auto& o : observations) {
    nlohmann::json j{{"x", o.x}};
    j["y"] = o.y ? nlohmann::json(*o.y ? 1 : 0) : nlohmann::json(nullptr);
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace conceptlab
