/*
 * Copyright 2026 The conceptlab Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CONCEPTLAB_CONCEPTLAB_H_
#define CONCEPTLAB_CONCEPTLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CLAB_API __declspec(dllexport)
#else
#define CLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum clab_status {
  CLAB_OK = 0,
  CLAB_ERR_SYNTAX = 1,
  CLAB_ERR_ARITY = 2,
  CLAB_ERR_UNKNOWN_SYMBOL = 3,
  CLAB_ERR_INVALID_ARGUMENT = 4,
  CLAB_ERR_ENUMERATION_CAP = 5,
  CLAB_ERR_COMPLEXITY_CAP = 6,
  CLAB_ERR_EXHAUSTED = 7,
  CLAB_ERR_BUDGET_EXCEEDED = 8,
  CLAB_ERR_DIVERGENCE = 9,
  CLAB_ERR_BANDWIDTH = 10,
  CLAB_ERR_CONFIG = 11,
  CLAB_ERR_IO = 12,
  CLAB_ERR_NULL_ARGUMENT = 13,
  CLAB_ERR_INTERNAL = 14
} clab_status;

typedef struct clab_program clab_program;
typedef struct clab_net clab_net;
typedef struct clab_result clab_result;

CLAB_API const char* clab_version(void);
/* Kebab-case name of a status, e.g. "unknown-symbol". */
CLAB_API const char* clab_status_name(clab_status status);
/* Message of the last failed call on this thread ("" after a success). */
CLAB_API const char* clab_last_error(void);
/* Byte offset attached to the last parse error, or SIZE_MAX. */
CLAB_API size_t clab_last_error_offset(void);

/* Programs of the concept language. */
CLAB_API clab_status clab_program_parse(const char* text, clab_program** out);
CLAB_API clab_status clab_program_enumerate(uint64_t index, clab_program** out);
CLAB_API clab_status clab_program_index(const clab_program* program, uint64_t* out);
CLAB_API clab_status clab_program_size(const clab_program* program, size_t* out);
CLAB_API clab_status clab_program_eval(const clab_program* program, uint64_t n, int* out);
/* Canonical text. Writes at most `capacity` bytes including the terminator;
   `needed` receives the full length plus one. */
CLAB_API clab_status clab_program_to_string(const clab_program* program, char* buffer, size_t capacity,
                                            size_t* needed);
CLAB_API void clab_program_free(clab_program* program);

/* Scalar ReLU networks. */
CLAB_API clab_status clab_net_from_json(const char* json, clab_net** out);
CLAB_API clab_status clab_net_forward(const clab_net* net, double x, double* out);
CLAB_API clab_status clab_net_pieces(const clab_net* net, size_t* out);
CLAB_API clab_status clab_net_falsify_parity(const clab_net* net, uint64_t* n, int* verified);
CLAB_API void clab_net_free(clab_net* net);

CLAB_API clab_status clab_rnn_parity(uint64_t n, int* even, uint64_t* steps);

/* Experiments. `config_json` is a JSON object of subcommand parameters (NULL
   means defaults). The result owns a one-line summary, a JSON summary and a
   list of named artifacts. */
CLAB_API size_t clab_subcommand_count(void);
CLAB_API const char* clab_subcommand_name(size_t i);
CLAB_API clab_status clab_run(const char* subcommand, const char* config_json, clab_result** out);
CLAB_API const char* clab_result_summary(const clab_result* result);
CLAB_API const char* clab_result_summary_json(const clab_result* result);
CLAB_API size_t clab_result_artifact_count(const clab_result* result);
CLAB_API const char* clab_result_artifact_name(const clab_result* result, size_t i);
CLAB_API const void* clab_result_artifact_data(const clab_result* result, size_t i, size_t* size);
CLAB_API void clab_result_free(clab_result* result);

#ifdef __cplusplus
}
#endif

#endif  /* CONCEPTLAB_CONCEPTLAB_H_ */
