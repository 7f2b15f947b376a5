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

#include "neural/net.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "util/error.hpp"

namespace conceptlab::neural {

FeedForwardNet::FeedForwardNet(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  require(!layers_.empty(), "network needs at least one layer");
  require(layers_.front().inputs == 1, "network input dimension must be 1");
  require(layers_.back().outputs == 1, "network output dimension must be 1");
  require(layers_.back().activation == Activation::identity, "last layer must be identity");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const DenseLayer& l = layers_[i];
    require(l.inputs > 0 && l.outputs > 0, "empty layer");
    require(l.weights.size() == l.inputs * l.outputs, "weight count does not match layer shape");
    require(l.bias.size() == l.outputs, "bias count does not match layer shape");
    if (i + 1 < layers_.size()) {
      require(layers_[i + 1].inputs == l.outputs, "layer dimensions do not chain");
    }
  }
}

double FeedForwardNet::forward(double x) const {
  std::vector<double> current{x};
  std::vector<double> next;
  for (const DenseLayer& l : layers_) {
    next.assign(l.outputs, 0.0);
    for (std::size_t r = 0; r < l.outputs; ++r) {
      double acc = l.bias[r];
      const double* row = &l.weights[r * l.inputs];
      for (std::size_t c = 0; c < l.inputs; ++c) acc += row[c] * current[c];
      next[r] = (l.activation == Activation::relu && acc < 0.0) ? 0.0 : acc;
    }
    current.swap(next);
  }
  return current[0];
}

std::size_t FeedForwardNet::parameter_count() const {
  std::size_t n = 0;
  for (const DenseLayer& l : layers_) n += l.weights.size() + l.bias.size();
  return n;
}

std::vector<std::size_t> FeedForwardNet::hidden_widths() const {
  std::vector<std::size_t> widths;
  for (std::size_t i = 0; i + 1 < layers_.size(); ++i) widths.push_back(layers_[i].outputs);
  return widths;
}

namespace {

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void append_array(std::string& out, const std::vector<double>& values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    append_number(out, values[i]);
  }
  out += ']';
}

}  // namespace

std::string FeedForwardNet::to_json() const {
  std::string out = "{\"layers\":[";
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const DenseLayer& l = layers_[i];
    if (i) out += ',';
    out += "{\"inputs\":" + std::to_string(l.inputs) + ",\"outputs\":" + std::to_string(l.outputs) +
           ",\"activation\":\"" + (l.activation == Activation::relu ? "relu" : "identity") +
           "\",\"weights\":";
    append_array(out, l.weights);
    out += ",\"bias\":";
    append_array(out, l.bias);
    out += '}';
  }
  out += "]}\n";
  return out;
}

FeedForwardNet FeedForwardNet::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::config, std::string("invalid network JSON: ") + e.what());
  }
  std::vector<DenseLayer> layers;
  try {
    for (const auto& jl : j.at("layers")) {
      DenseLayer l;
      l.inputs = jl.at("inputs").get<std::size_t>();
      l.outputs = jl.at("outputs").get<std::size_t>();
      const std::string act = jl.at("activation").get<std::string>();
      if (act == "relu") {
        l.activation = Activation::relu;
      } else if (act == "identity") {
        l.activation = Activation::identity;
      } else {
        throw Error(ErrorCode::config, "unsupported activation '" + act + "'");
      }
      l.weights = jl.at("weights").get<std::vector<double>>();
      l.bias = jl.at("bias").get<std::vector<double>>();
      layers.push_back(std::move(l));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::config, std::string("invalid network JSON: ") + e.what());
  }
  return FeedForwardNet(std::move(layers));
}

FeedForwardNet random_net(std::span<const std::size_t> hidden_widths, Rng& rng,
                          const InitOptions& options) {
  std::vector<DenseLayer> layers;
  std::size_t inputs = 1;
  for (std::size_t li = 0; li < hidden_widths.size(); ++li) {
    DenseLayer l;
    l.inputs = inputs;
    l.outputs = hidden_widths[li];
    l.activation = Activation::relu;
    l.weights.resize(l.inputs * l.outputs);
    l.bias.resize(l.outputs);
    const double scale = std::sqrt(2.0 / static_cast<double>(inputs));
    if (li == 0) {
      for (std::size_t r = 0; r < l.outputs; ++r) {
        const double w = options.first_layer_scale * scale * rng.normal();
        const double kink = rng.uniform(options.kink_lo, options.kink_hi);
        l.weights[r] = w;
        l.bias[r] = -w * kink;
      }
    } else {
      for (double& w : l.weights) w = scale * rng.normal();
      for (double& b : l.bias) b = 0.1 * rng.normal();
    }
    layers.push_back(std::move(l));
    inputs = hidden_widths[li];
  }
  DenseLayer out;
  out.inputs = inputs;
  out.outputs = 1;
  out.activation = Activation::identity;
  out.weights.resize(inputs);
  const double scale = options.output_scale / std::sqrt(static_cast<double>(inputs));
  for (double& w : out.weights) w = scale * rng.normal();
  out.bias = {FeedForwardNet::kDecisionLevel};
  layers.push_back(std::move(out));
  return FeedForwardNet(std::move(layers));
}

FeedForwardNet constant_net(double c) {
  DenseLayer l;
  l.inputs = 1;
  l.outputs = 1;
  l.activation = Activation::identity;
  l.weights = {0.0};
  l.bias = {c};
  return FeedForwardNet({l});
}

FeedForwardNet with_input_scale(const FeedForwardNet& net, double scale) {
  std::vector<DenseLayer> layers(net.layers().begin(), net.layers().end());
  for (double& w : layers.front().weights) w *= scale;
  return FeedForwardNet(std::move(layers));
}

}  // namespace conceptlab::neural
