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

#include "util/error.hpp"

namespace conceptlab {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::syntax: return "syntax";
    case ErrorCode::arity: return "arity";
    case ErrorCode::unknown_symbol: return "unknown-symbol";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::enumeration_cap: return "enumeration-cap";
    case ErrorCode::complexity_cap: return "complexity-cap";
    case ErrorCode::exhausted: return "exhausted";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::bandwidth: return "bandwidth";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace conceptlab
