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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace conceptlab {

enum class ErrorCode {
  syntax,
  arity,
  unknown_symbol,
  invalid_argument,
  enumeration_cap,
  complexity_cap,
  exhausted,
  budget_exceeded,
  divergence,
  bandwidth,
  config,
  io,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> offset = std::nullopt)
      : std::runtime_error(message), code_(code), offset_(offset) {}

  ErrorCode code() const noexcept { return code_; }
  // Byte offset into the parsed text, for parser errors.
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

inline void require(bool condition, const std::string& message,
                    ErrorCode code = ErrorCode::invalid_argument) {
  if (!condition) throw Error(code, message);
}

}  // namespace conceptlab
