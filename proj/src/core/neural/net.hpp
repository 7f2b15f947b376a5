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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "util/rng.hpp"

namespace conceptlab::neural {

enum class Activation { relu, identity };

struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;  // row-major, outputs x inputs
  std::vector<double> bias;     // outputs
  Activation activation = Activation::relu;

  double weight(std::size_t row, std::size_t col) const { return weights[row * inputs + col]; }
};

// Scalar-input, scalar-output network. The output is compared against the
// decision level 0.5: f(x) >= 0.5 classifies x as even/positive.
class FeedForwardNet {
 public:
  static constexpr double kDecisionLevel = 0.5;

  FeedForwardNet() = default;
  // Throws Error(invalid_argument) on shape mismatch, input/output width != 1
  // or a non-identity last layer.
  explicit FeedForwardNet(std::vector<DenseLayer> layers);

  double forward(double x) const;
  bool classify(double x) const { return forward(x) >= kDecisionLevel; }

  std::span<const DenseLayer> layers() const noexcept { return layers_; }
  std::vector<DenseLayer>& mutable_layers() noexcept { return layers_; }
  std::size_t parameter_count() const;
  // Hidden widths, e.g. {32} for a 1x32x1 net.
  std::vector<std::size_t> hidden_widths() const;

  // JSON with layer shapes and row-major weights, 17 significant digits.
  std::string to_json() const;
  static FeedForwardNet from_json(std::string_view text);

 private:
  std::vector<DenseLayer> layers_;
};

struct InitOptions {
  // Hidden units of the first layer get kinks uniformly in [kink_lo, kink_hi].
  double kink_lo = 0.0;
  double kink_hi = 1.0;
  double first_layer_scale = 1.0;
  double output_scale = 1.0;
};

// Random ReLU net with the given hidden widths. Hidden layers use He-scaled
// Gaussian weights; the first layer places its kinks uniformly over the input
// range; the output bias sits at the decision level.
FeedForwardNet random_net(std::span<const std::size_t> hidden_widths, Rng& rng,
                          const InitOptions& options = {});

// Net computing the constant c.
FeedForwardNet constant_net(double c);

// Folds an input scaling x -> scale * x into the first layer.
FeedForwardNet with_input_scale(const FeedForwardNet& net, double scale);

}  // namespace conceptlab::neural
