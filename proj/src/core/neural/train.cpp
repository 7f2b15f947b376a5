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

#include "neural/train.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "util/error.hpp"
#include "util/rng.hpp"

namespace conceptlab::neural {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// -log p(y | z) for p = sigmoid(z).
double nll_logit(double z, int y) {
  return std::max(z, 0.0) - (y ? z : 0.0) + std::log1p(std::exp(-std::abs(z)));
}

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

// Scratch space for one forward/backward pass.
struct Workspace {
  std::vector<std::vector<double>> activations;  // per layer output, [0] = input
  std::vector<std::vector<double>> deltas;

  explicit Workspace(const FeedForwardNet& net) {
    activations.emplace_back(1);
    for (const DenseLayer& l : net.layers()) {
      activations.emplace_back(l.outputs);
      deltas.emplace_back(l.outputs);
    }
  }
};

double forward(const FeedForwardNet& net, double x, Workspace& ws) {
  ws.activations[0][0] = x;
  const auto layers = net.layers();
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const DenseLayer& l = layers[li];
    const auto& in = ws.activations[li];
    auto& out = ws.activations[li + 1];
    for (std::size_t r = 0; r < l.outputs; ++r) {
      double acc = l.bias[r];
      const double* row = &l.weights[r * l.inputs];
      for (std::size_t c = 0; c < l.inputs; ++c) acc += row[c] * in[c];
      out[r] = (l.activation == Activation::relu && acc < 0.0) ? 0.0 : acc;
    }
  }
  return ws.activations.back()[0];
}

// Accumulates d(loss)/d(params) for one sample into `grads`, given
// d(loss)/d(output).
void backward(const FeedForwardNet& net, double output_grad, Workspace& ws,
              std::vector<DenseLayer>& grads) {
  const auto layers = net.layers();
  ws.deltas.back()[0] = output_grad;
  for (std::size_t li = layers.size(); li-- > 0;) {
    const DenseLayer& l = layers[li];
    auto& delta = ws.deltas[li];
    if (l.activation == Activation::relu) {
      const auto& out = ws.activations[li + 1];
      for (std::size_t r = 0; r < l.outputs; ++r) {
        if (out[r] <= 0.0) delta[r] = 0.0;
      }
    }
    const auto& in = ws.activations[li];
    DenseLayer& g = grads[li];
    for (std::size_t r = 0; r < l.outputs; ++r) {
      const double d = delta[r];
      if (d == 0.0) continue;
      g.bias[r] += d;
      double* grow = &g.weights[r * l.inputs];
      for (std::size_t c = 0; c < l.inputs; ++c) grow[c] += d * in[c];
    }
    if (li > 0) {
      auto& prev = ws.deltas[li - 1];
      std::fill(prev.begin(), prev.end(), 0.0);
      for (std::size_t r = 0; r < l.outputs; ++r) {
        const double d = delta[r];
        if (d == 0.0) continue;
        const double* row = &l.weights[r * l.inputs];
        for (std::size_t c = 0; c < l.inputs; ++c) prev[c] += d * row[c];
      }
    }
  }
}

std::vector<DenseLayer> zeros_like(const FeedForwardNet& net) {
  std::vector<DenseLayer> z(net.layers().begin(), net.layers().end());
  for (DenseLayer& l : z) {
    std::fill(l.weights.begin(), l.weights.end(), 0.0);
    std::fill(l.bias.begin(), l.bias.end(), 0.0);
  }
  return z;
}

}  // namespace

double free_energy(double loss_nats, double temperature, double complexity_bits) {
  return loss_nats + temperature * complexity_bits * std::numbers::ln2;
}

std::string TrainLedger::to_csv() const {
  std::string out = "epoch,loss_nats,complexity_bits,temperature,free_energy_nats,holdout_err\n";
  for (const LedgerRow& r : rows) {
    out += std::to_string(r.epoch);
    for (double v : {r.loss_nats, r.complexity_bits, r.temperature, r.free_energy_nats, r.holdout_err}) {
      out += ',';
      append_number(out, v);
    }
    out += '\n';
  }
  return out;
}

double TrainLedger::max_free_energy_residual() const {
  double worst = 0.0;
  for (const LedgerRow& r : rows) {
    const double expected = free_energy(r.loss_nats, r.temperature, r.complexity_bits);
    const double scale = std::max(std::abs(expected), 1e-300);
    worst = std::max(worst, std::abs(r.free_energy_nats - expected) / scale);
  }
  return worst;
}

double mean_nll(const FeedForwardNet& net, std::span<const LabeledPoint> data) {
  double total = 0.0;
  for (const LabeledPoint& p : data) {
    total += nll_logit(net.forward(p.x) - FeedForwardNet::kDecisionLevel, p.y);
  }
  return data.empty() ? 0.0 : total / static_cast<double>(data.size());
}

double accuracy(const FeedForwardNet& net, std::span<const LabeledPoint> data) {
  std::size_t right = 0;
  for (const LabeledPoint& p : data) right += net.classify(p.x) == (p.y == 1);
  return data.empty() ? 0.0 : static_cast<double>(right) / static_cast<double>(data.size());
}

double symbol_bits(std::int64_t q, double resolution, double prior_scale) {
  const double u = resolution / prior_scale;
  const double aq = std::abs(static_cast<double>(q));
  double p;
  if (q == 0) {
    p = std::erf(0.5 * u / std::numbers::sqrt2);
  } else {
    p = 0.5 * (std::erfc((aq - 0.5) * u / std::numbers::sqrt2) -
               std::erfc((aq + 0.5) * u / std::numbers::sqrt2));
  }
  if (p > 1e-300) return -std::log2(p);
  // Far tail: bin mass ~ u * phi(q u).
  const double z = aq * u;
  const double log_p = std::log(u) - 0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi);
  return -log_p / std::numbers::ln2;
}

double complexity_bits(const FeedForwardNet& before, const FeedForwardNet& after, double resolution,
                       double prior_scale) {
  require(resolution > 0.0 && prior_scale > 0.0, "resolution and prior scale must be positive");
  const auto a = before.layers();
  const auto b = after.layers();
  require(a.size() == b.size(), "networks differ in depth");
  double bits = 0.0;
  auto add = [&](const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size(), "networks differ in shape");
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto q = static_cast<std::int64_t>(std::llround((y[i] - x[i]) / resolution));
      bits += symbol_bits(q, resolution, prior_scale);
    }
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    add(a[i].weights, b[i].weights);
    add(a[i].bias, b[i].bias);
  }
  return bits;
}

TrainResult train_sgd(const FeedForwardNet& init, std::span<const LabeledPoint> data,
                      std::span<const LabeledPoint> holdout, const TrainConfig& config) {
  require(!data.empty(), "training data is empty");
  require(config.batch_size >= 1, "batch size must be >= 1");
  require(config.learning_rate > 0.0, "learning rate must be positive");
  require(config.momentum >= 0.0 && config.momentum < 1.0, "momentum must be in [0, 1)");

  FeedForwardNet net = init;
  Rng rng(config.seed);
  Workspace ws(net);
  std::vector<DenseLayer> grads = zeros_like(net);
  std::vector<DenseLayer> velocity = zeros_like(net);
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  TrainResult result{net, {}};
  auto record = [&](std::size_t epoch, double train_loss) {
    LedgerRow row;
    row.epoch = epoch;
    row.loss_nats = train_loss;
    row.complexity_bits = complexity_bits(init, net, config.resolution, config.prior_scale);
    row.temperature = config.temperature;
    row.free_energy_nats = free_energy(row.loss_nats, row.temperature, row.complexity_bits);
    if (!holdout.empty()) row.holdout_err = 1.0 - accuracy(net, holdout);
    row.train_accuracy = accuracy(net, data);
    result.ledger.rows.push_back(row);
    return row.train_accuracy;
  };
  record(0, mean_nll(net, data));

  const std::size_t every = std::max<std::size_t>(config.ledger_every, 1);
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      for (DenseLayer& g : grads) {
        std::fill(g.weights.begin(), g.weights.end(), 0.0);
        std::fill(g.bias.begin(), g.bias.end(), 0.0);
      }
      for (std::size_t k = start; k < end; ++k) {
        const LabeledPoint& p = data[order[k]];
        const double out = forward(net, p.x, ws);
        const double grad = sigmoid(out - FeedForwardNet::kDecisionLevel) - static_cast<double>(p.y);
        backward(net, grad, ws, grads);
      }
      const double scale = 1.0 / static_cast<double>(end - start);
      auto& layers = net.mutable_layers();
      for (std::size_t li = 0; li < layers.size(); ++li) {
        auto step = [&](std::vector<double>& param, std::vector<double>& vel,
                        const std::vector<double>& g) {
          for (std::size_t i = 0; i < param.size(); ++i) {
            vel[i] = config.momentum * vel[i] + scale * g[i];
            param[i] -= config.learning_rate * vel[i];
          }
        };
        step(layers[li].weights, velocity[li].weights, grads[li].weights);
        step(layers[li].bias, velocity[li].bias, grads[li].bias);
      }
    }
    const bool last = epoch == config.epochs;
    if (epoch % every == 0 || last || config.stop_at_accuracy <= 1.0) {
      const double loss = mean_nll(net, data);
      if (!std::isfinite(loss)) {
        throw Error(ErrorCode::divergence, "training diverged at epoch " + std::to_string(epoch));
      }
      const bool log_row = epoch % every == 0 || last;
      if (log_row) {
        const double acc = record(epoch, loss);
        if (acc >= config.stop_at_accuracy) break;
      } else if (accuracy(net, data) >= config.stop_at_accuracy) {
        record(epoch, loss);
        break;
      }
    }
  }
  result.net = net;
  return result;
}

}  // namespace conceptlab::neural
