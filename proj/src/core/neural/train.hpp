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

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "neural/net.hpp"

namespace conceptlab::neural {

struct LabeledPoint {
  double x = 0.0;
  int y = 0;  // 0 or 1
};

struct TrainConfig {
  double learning_rate = 0.05;
  double momentum = 0.0;
  std::size_t batch_size = 16;
  std::size_t epochs = 100;
  double temperature = 1e-3;
  std::uint64_t seed = 0;
  // Complexity proxy: quantization step and prior scale for weight deltas.
  double resolution = 0.01;
  double prior_scale = 1.0;
  // Ledger row every `ledger_every` epochs (and always for the last epoch).
  std::size_t ledger_every = 1;
  // Stop once train accuracy reaches this value; > 1 disables early stop.
  double stop_at_accuracy = 2.0;
};

struct LedgerRow {
  std::size_t epoch = 0;
  double loss_nats = 0.0;
  double complexity_bits = 0.0;
  double temperature = 0.0;
  double free_energy_nats = 0.0;
  double holdout_err = std::numeric_limits<double>::quiet_NaN();
  double train_accuracy = 0.0;
};

struct TrainLedger {
  std::vector<LedgerRow> rows;

  // Columns: epoch, loss_nats, complexity_bits, temperature,
  // free_energy_nats, holdout_err.
  std::string to_csv() const;
  // Largest relative deviation of free_energy_nats from
  // loss_nats + temperature * complexity_bits * ln 2.
  double max_free_energy_residual() const;
};

double free_energy(double loss_nats, double temperature, double complexity_bits);

struct TrainResult {
  FeedForwardNet net;
  TrainLedger ledger;
};

// Minibatch SGD (optionally with heavy-ball momentum) on the mean negative
// log-likelihood of p(y=1|x) = sigmoid(f(x) - 0.5). Deterministic given
// config.seed. Throws Error(divergence) naming the epoch if the loss stops
// being finite.
TrainResult train_sgd(const FeedForwardNet& init, std::span<const LabeledPoint> data,
                      std::span<const LabeledPoint> holdout, const TrainConfig& config);

double mean_nll(const FeedForwardNet& net, std::span<const LabeledPoint> data);
double accuracy(const FeedForwardNet& net, std::span<const LabeledPoint> data);

// Code length in bits of the weight deltas quantized at `resolution` under a
// zero-centred discretized Gaussian prior of scale `prior_scale`. Each
// quantized delta q costs -log2 P(q) with
// P(q) = Phi((q + 1/2) r / s) - Phi((q - 1/2) r / s).
double complexity_bits(const FeedForwardNet& before, const FeedForwardNet& after, double resolution,
                       double prior_scale = 1.0);
// -log2 P(q) for a single quantized symbol.
double symbol_bits(std::int64_t q, double resolution, double prior_scale);

}  // namespace conceptlab::neural
