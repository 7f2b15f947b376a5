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

#include "conceptlab/conceptlab.h"

#include <cstdint>
#include <cstring>
#include <new>
#include <string>

#include "dsl/enumerate.hpp"
#include "dsl/eval.hpp"
#include "dsl/program.hpp"
#include "experiments/runner.hpp"
#include "neural/net.hpp"
#include "neural/pwl.hpp"
#include "neural/rnn.hpp"
#include "util/error.hpp"

struct clab_program {
  conceptlab::dsl::Program program;
};

struct clab_net {
  conceptlab::neural::FeedForwardNet net;
};

struct clab_result {
  conceptlab::experiments::RunResult result;
};

namespace {

using conceptlab::Error;
using conceptlab::ErrorCode;

thread_local std::string last_error;
thread_local std::size_t last_offset = SIZE_MAX;

clab_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::syntax: return CLAB_ERR_SYNTAX;
    case ErrorCode::arity: return CLAB_ERR_ARITY;
    case ErrorCode::unknown_symbol: return CLAB_ERR_UNKNOWN_SYMBOL;
    case ErrorCode::invalid_argument: return CLAB_ERR_INVALID_ARGUMENT;
    case ErrorCode::enumeration_cap: return CLAB_ERR_ENUMERATION_CAP;
    case ErrorCode::complexity_cap: return CLAB_ERR_COMPLEXITY_CAP;
    case ErrorCode::exhausted: return CLAB_ERR_EXHAUSTED;
    case ErrorCode::budget_exceeded: return CLAB_ERR_BUDGET_EXCEEDED;
    case ErrorCode::divergence: return CLAB_ERR_DIVERGENCE;
    case ErrorCode::bandwidth: return CLAB_ERR_BANDWIDTH;
    case ErrorCode::config: return CLAB_ERR_CONFIG;
    case ErrorCode::io: return CLAB_ERR_IO;
  }
  return CLAB_ERR_INTERNAL;
}

clab_status fail(clab_status status, std::string message) {
  last_error = std::move(message);
  last_offset = SIZE_MAX;
  return status;
}

// Runs `body`, mapping exceptions to status codes.
template <class F>
clab_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    last_offset = SIZE_MAX;
    return CLAB_OK;
  } catch (const Error& e) {
    last_error = e.what();
    last_offset = e.offset().value_or(SIZE_MAX);
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    return fail(CLAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CLAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CLAB_ERR_INTERNAL, "unknown exception");
  }
}

#define CLAB_REQUIRE(ptr) \
  if ((ptr) == nullptr) return fail(CLAB_ERR_NULL_ARGUMENT, #ptr " is null")

}  // namespace

extern "C" {

const char* clab_version(void) { return "0.1.0"; }

const char* clab_status_name(clab_status status) {
  switch (status) {
    case CLAB_OK: return "ok";
    case CLAB_ERR_NULL_ARGUMENT: return "null-argument";
    case CLAB_ERR_INTERNAL: return "internal";
    default: break;
  }
  static constexpr ErrorCode codes[] = {
      ErrorCode::syntax,          ErrorCode::arity,       ErrorCode::unknown_symbol, ErrorCode::invalid_argument,
      ErrorCode::enumeration_cap, ErrorCode::complexity_cap, ErrorCode::exhausted,   ErrorCode::budget_exceeded,
      ErrorCode::divergence,      ErrorCode::bandwidth,   ErrorCode::config,         ErrorCode::io};
  const int i = static_cast<int>(status) - 1;
  if (i < 0 || i >= static_cast<int>(std::size(codes))) return "unknown";
  return conceptlab::error_code_name(codes[i]).data();
}

const char* clab_last_error(void) { return last_error.c_str(); }
size_t clab_last_error_offset(void) { return last_offset; }

clab_status clab_program_parse(const char* text, clab_program** out) {
  CLAB_REQUIRE(text);
  CLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new clab_program{conceptlab::dsl::parse(text)}; });
}

clab_status clab_program_enumerate(uint64_t index, clab_program** out) {
  CLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new clab_program{conceptlab::dsl::enumerate(index)}; });
}

clab_status clab_program_index(const clab_program* program, uint64_t* out) {
  CLAB_REQUIRE(program);
  CLAB_REQUIRE(out);
  return guarded([&] { *out = conceptlab::dsl::index_of(program->program); });
}

clab_status clab_program_size(const clab_program* program, size_t* out) {
  CLAB_REQUIRE(program);
  CLAB_REQUIRE(out);
  *out = program->program.size();
  return CLAB_OK;
}

clab_status clab_program_eval(const clab_program* program, uint64_t n, int* out) {
  CLAB_REQUIRE(program);
  CLAB_REQUIRE(out);
  return guarded([&] { *out = conceptlab::dsl::eval(program->program, n) ? 1 : 0; });
}

clab_status clab_program_to_string(const clab_program* program, char* buffer, size_t capacity, size_t* needed) {
  CLAB_REQUIRE(program);
  return guarded([&] {
    const std::string s = program->program.to_string();
    if (needed) *needed = s.size() + 1;
    if (buffer && capacity > 0) {
      const std::size_t n = std::min(capacity - 1, s.size());
      std::memcpy(buffer, s.data(), n);
      buffer[n] = '\0';
    }
  });
}

void clab_program_free(clab_program* program) { delete program; }

clab_status clab_net_from_json(const char* json, clab_net** out) {
  CLAB_REQUIRE(json);
  CLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new clab_net{conceptlab::neural::FeedForwardNet::from_json(json)}; });
}

clab_status clab_net_forward(const clab_net* net, double x, double* out) {
  CLAB_REQUIRE(net);
  CLAB_REQUIRE(out);
  return guarded([&] { *out = net->net.forward(x); });
}

clab_status clab_net_pieces(const clab_net* net, size_t* out) {
  CLAB_REQUIRE(net);
  CLAB_REQUIRE(out);
  return guarded([&] { *out = conceptlab::neural::exact_pwl(net->net).pieces(); });
}

clab_status clab_net_falsify_parity(const clab_net* net, uint64_t* n, int* verified) {
  CLAB_REQUIRE(net);
  CLAB_REQUIRE(n);
  return guarded([&] {
    const auto c = conceptlab::neural::falsify_parity(net->net);
    *n = c.n;
    if (verified) *verified = c.verified ? 1 : 0;
  });
}

void clab_net_free(clab_net* net) { delete net; }

clab_status clab_rnn_parity(uint64_t n, int* even, uint64_t* steps) {
  CLAB_REQUIRE(even);
  return guarded([&] {
    const auto r = conceptlab::neural::rnn_parity(n);
    *even = r.even ? 1 : 0;
    if (steps) *steps = r.steps;
  });
}

size_t clab_subcommand_count(void) { return conceptlab::experiments::subcommands().size(); }

const char* clab_subcommand_name(size_t i) {
  const auto& names = conceptlab::experiments::subcommands();
  return i < names.size() ? names[i].data() : nullptr;
}

clab_status clab_run(const char* subcommand, const char* config_json, clab_result** out) {
  CLAB_REQUIRE(subcommand);
  CLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new clab_result{conceptlab::experiments::run(subcommand, config_json ? config_json : "")};
  });
}

const char* clab_result_summary(const clab_result* result) { return result ? result->result.summary.c_str() : ""; }

const char* clab_result_summary_json(const clab_result* result) {
  return result ? result->result.summary_json.c_str() : "";
}

size_t clab_result_artifact_count(const clab_result* result) {
  return result ? result->result.artifacts.size() : 0;
}

const char* clab_result_artifact_name(const clab_result* result, size_t i) {
  if (!result || i >= result->result.artifacts.size()) return nullptr;
  return result->result.artifacts[i].name.c_str();
}

const void* clab_result_artifact_data(const clab_result* result, size_t i, size_t* size) {
  if (!result || i >= result->result.artifacts.size()) {
    if (size) *size = 0;
    return nullptr;
  }
  const auto& bytes = result->result.artifacts[i].bytes;
  if (size) *size = bytes.size();
  return bytes.data();
}

void clab_result_free(clab_result* result) { delete result; }

}  // extern "C"
