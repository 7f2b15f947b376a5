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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "neural/net.hpp"
#include "neural/pwl.hpp"
#include "neural/rnn.hpp"
#include "neural/train.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

using namespace conceptlab;
using namespace conceptlab::neural;

namespace {

DenseLayer layer(std::size_t in, std::size_t out, std::vector<double> w, std::vector<double> b,
                 Activation a) {
  DenseLayer l;
  l.inputs = in;
  l.outputs = out;
  l.weights = std::move(w);
  l.bias = std::move(b);
  l.activation = a;
  return l;
}

// relu(x) - relu(x - 1)
FeedForwardNet clamp_net() {
  return FeedForwardNet({layer(1, 2, {1, 1}, {0, -1}, Activation::relu),
                         layer(2, 1, {1, -1}, {0}, Activation::identity)});
}

// Oracle forward pass written against the raw layer arrays.
double reference_forward(const FeedForwardNet& net, double x) {
  std::vector<double> v{x};
  for (const DenseLayer& l : net.layers()) {
    std::vector<double> next(l.outputs);
    for (std::size_t r = 0; r < l.outputs; ++r) {
      long double acc = l.bias[r];
      for (std::size_t c = 0; c < l.inputs; ++c) acc += (long double)l.weights[r * l.inputs + c] * v[c];
      next[r] = l.activation == Activation::relu ? std::max<double>(0.0, acc) : double(acc);
    }
    v = std::move(next);
  }
  return v[0];
}

// Gaussian bin mass by composite Simpson integration of the density.
double bin_mass(double lo, double hi, double sigma) {
  const int n = 2000;
  const double h = (hi - lo) / n;
  auto pdf = [&](double t) { return std::exp(-0.5 * t * t / (sigma * sigma)) / (sigma * std::sqrt(2 * std::numbers::pi)); };
  double s = pdf(lo) + pdf(hi);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * pdf(lo + i * h);
  return s * h / 3;
}

}  // namespace

TEST_CASE("exact_pwl of relu") {
  const FeedForwardNet relu({layer(1, 1, {1}, {0}, Activation::relu),
                             layer(1, 1, {1}, {0}, Activation::identity)});
  const PwlFunction f = exact_pwl(relu);
  REQUIRE(f.breakpoints.size() == 1);
  CHECK(f.breakpoints[0] == doctest::Approx(0.0));
  CHECK(f.slopes == std::vector<double>{0.0, 1.0});
}

TEST_CASE("exact_pwl of relu(x) - relu(x-1)") {
  const PwlFunction f = exact_pwl(clamp_net());
  REQUIRE(f.breakpoints.size() == 2);
  CHECK(f.breakpoints[0] == doctest::Approx(0.0));
  CHECK(f.breakpoints[1] == doctest::Approx(1.0));
  CHECK(f.slopes == std::vector<double>{0.0, 1.0, 0.0});
  const auto up = f.superlevel_set(0.5);
  REQUIRE(up.size() == 1);
  CHECK(up[0].lo == doctest::Approx(0.5));
  CHECK(std::isinf(up[0].hi));
}

TEST_CASE("exact_pwl agrees with the forward pass on 100 random 1x32x1 nets") {
  Rng rng(31);
  const std::size_t widths[] = {32};
  for (int k = 0; k < 100; ++k) {
    Rng net_rng = rng.split(k);
    InitOptions init;
    init.kink_lo = -4;
    init.kink_hi = 4;
    const FeedForwardNet net = random_net(widths, net_rng, init);
    const PwlFunction f = exact_pwl(net);
    CHECK(f.pieces() <= piece_bound(net));
    for (std::size_t i = 1; i < f.breakpoints.size(); ++i) CHECK(f.breakpoints[i] > f.breakpoints[i - 1]);
    // Continuity at every breakpoint.
    for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
      const double b = f.breakpoints[i];
      const double l = f.slopes[i] * b + f.intercepts[i];
      const double r = f.slopes[i + 1] * b + f.intercepts[i + 1];
      CHECK(std::abs(l - r) <= 1e-9 * std::max(1.0, std::abs(l)));
    }
    for (int j = 0; j < 1000; ++j) {
      const double x = rng.uniform(-10, 10);
      const double want = reference_forward(net, x);
      const double got = f(x);
      if (std::abs(got - want) > 1e-9 * std::max(1.0, std::abs(want))) {
        FAIL("pwl mismatch at x=" << x << ": " << got << " vs " << want);
      }
      CHECK(net.forward(x) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact_pwl on a deeper net and the piece cap") {
  Rng rng(8);
  const std::size_t widths[] = {16, 16};
  const FeedForwardNet net = random_net(widths, rng, {-2, 2, 1, 1});
  const PwlFunction f = exact_pwl(net);
  for (double x = -5; x <= 5; x += 0.01) {
    CHECK(f(x) == doctest::Approx(reference_forward(net, x)).epsilon(1e-9).scale(1.0));
  }
  PwlOptions tiny;
  tiny.piece_cap = 2;
  try {
    exact_pwl(net, tiny);
    FAIL("expected complexity cap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::complexity_cap);
  }
}

TEST_CASE("decision regions are finite unions of intervals") {
  Rng rng(12);
  const std::size_t widths[] = {32};
  for (int k = 0; k < 20; ++k) {
    const FeedForwardNet net = random_net(widths, rng, {0, 8, 1, 1});
    const PwlFunction f = exact_pwl(net);
    const auto set = f.superlevel_set(FeedForwardNet::kDecisionLevel);
    CHECK(set.size() <= f.pieces());
    for (std::size_t i = 0; i < set.size(); ++i) {
      CHECK(set[i].lo <= set[i].hi);
      if (i) CHECK(set[i].lo > set[i - 1].hi);
    }
    for (double x = -2; x <= 10; x += 0.0137) {
      bool inside = false;
      for (const Interval& iv : set) inside |= x >= iv.lo && x <= iv.hi;
      const double v = reference_forward(net, x);
      if (std::abs(v - 0.5) > 1e-9) CHECK(inside == (v >= 0.5));
    }
  }
}

TEST_CASE("falsify_parity on constant nets") {
  const auto hi = falsify_parity(constant_net(0.6));
  CHECK(hi.n == 1);
  CHECK(hi.verified);
  const auto lo = falsify_parity(constant_net(0.2));
  CHECK(lo.n == 0);
  CHECK(lo.verified);
}

TEST_CASE("falsify_parity always finds a verified counterexample") {
  Rng rng(77);
  const std::size_t widths[] = {32};
  for (int k = 0; k < 100; ++k) {
    const FeedForwardNet net = random_net(widths, rng, {0, 64, 1, 1});
    const auto c = falsify_parity(net);
    CHECK(c.verified);
    CHECK((reference_forward(net, double(c.n)) >= 0.5) != (c.n % 2 == 0));
    // The tail pair beyond the last breakpoint also contains a counterexample.
    const std::uint64_t m = c.tail_witness;
    CHECK(double(m) > c.tail_start);
    const bool even_wrong = (reference_forward(net, double(m)) >= 0.5) != (m % 2 == 0);
    const bool odd_wrong = (reference_forward(net, double(m + 1)) >= 0.5) != ((m + 1) % 2 == 0);
    CHECK(even_wrong != odd_wrong);
  }
  // Without the scan, the tail witness alone is returned.
  FalsifyOptions no_scan;
  no_scan.scan_limit = 0;
  Rng r2(3);
  const auto c = falsify_parity(random_net(widths, r2, {0, 64, 1, 1}), no_scan);
  CHECK(c.verified);
  // Only n = 0 is scanned; otherwise the answer comes from the tail pair.
  if (c.found_by_scan) {
    CHECK(c.n == 0);
  } else {
    CHECK(c.n >= c.tail_witness);
  }
}

TEST_CASE("rnn parity unrolling") {
  const auto zero = rnn_parity(0);
  CHECK(zero.even);
  CHECK(zero.steps == 1);
  const auto four = rnn_parity(4);
  CHECK(four.even);
  CHECK(four.steps == 5);
  CHECK(four.terminal == ParityRnnState{-1, 1, 1});
  ParityRnnState s{4, 0, 0};
  const ParityRnnState expected[] = {{3, 1, 0}, {2, 0, 0}, {1, 1, 0}, {0, 0, 0}, {-1, 1, 1}};
  for (const auto& e : expected) {
    s = rnn_step(s);
    CHECK(s == e);
  }
  CHECK_FALSE(rnn_parity(7).even);
  CHECK(rnn_parity(7).steps == 8);
}

TEST_CASE("rnn parity agrees with n mod 2 up to 10^6") {
  const auto table = rnn_parity_table(1'000'000);
  REQUIRE(table.even.size() == 1'000'001);
  for (std::uint64_t n = 0; n <= 1'000'000; ++n) {
    if (table.even[n] != (n % 2 == 0) || table.steps[n] != n + 1) FAIL("rnn table wrong at " << n);
  }
  for (std::uint64_t n : {0ULL, 1ULL, 999ULL, 4096ULL, 123457ULL}) {
    CHECK(rnn_parity(n).even == bool(table.even[n]));
  }
}

TEST_CASE("complexity proxy") {
  Rng rng(1);
  const std::size_t widths[] = {1024};
  const FeedForwardNet net = random_net(widths, rng);
  const double same = complexity_bits(net, net, 0.01, 1.0);
  // Zero deltas pay only the zero-symbol cost, -log2 P(|d| < res/2).
  const double zero_cost = -std::log2(bin_mass(-0.005, 0.005, 1.0));
  CHECK(same == doctest::Approx(zero_cost * double(net.parameter_count())).epsilon(1e-9));
  CHECK(net.parameter_count() == 3073);

  FeedForwardNet moved = net;
  moved.mutable_layers()[0].weights[3] += 1.0;
  const double delta = complexity_bits(net, moved, 0.01, 1.0) - same;
  const double want = -std::log2(bin_mass(0.995, 1.005, 1.0)) - zero_cost;
  CHECK(delta == doctest::Approx(want).epsilon(1e-8));
  CHECK(symbol_bits(100, 0.01, 1.0) == doctest::Approx(-std::log2(bin_mass(0.995, 1.005, 1.0))).epsilon(1e-9));
  // Far tail stays finite and increasing.
  CHECK(std::isfinite(symbol_bits(100000, 0.01, 1.0)));
  CHECK(symbol_bits(100000, 0.01, 1.0) > symbol_bits(10000, 0.01, 1.0));
}

TEST_CASE("trainer fits a separable two-point set") {
  const std::vector<LabeledPoint> data{{0.1, 0}, {0.9, 1}};
  // Sanity oracle: a hand-set single neuron.
  const FeedForwardNet hand({layer(1, 1, {100}, {-50}, Activation::relu),
                             layer(1, 1, {1}, {-10}, Activation::identity)});
  CHECK(mean_nll(hand, data) < 1e-2);

  Rng rng(4);
  const std::size_t widths[] = {8};
  const FeedForwardNet init = random_net(widths, rng);
  TrainConfig cfg;
  cfg.learning_rate = 0.1;
  cfg.batch_size = 2;
  cfg.epochs = 500;
  cfg.seed = 9;
  cfg.stop_at_accuracy = 2.0;
  const TrainResult r = train_sgd(init, data, data, cfg);
  CHECK(r.ledger.rows.back().loss_nats < 1e-2);
  CHECK(mean_nll(r.net, data) < 1e-2);
  CHECK(accuracy(r.net, data) == 1.0);
  CHECK(r.ledger.max_free_energy_residual() <= 1e-12);
  for (const LedgerRow& row : r.ledger.rows) {
    CHECK(row.free_energy_nats ==
          doctest::Approx(row.loss_nats + row.temperature * row.complexity_bits * std::numbers::ln2).epsilon(1e-12));
  }

  // Same seed, same bytes.
  const TrainResult again = train_sgd(init, data, data, cfg);
  CHECK(again.net.to_json() == r.net.to_json());
  CHECK(again.ledger.to_csv() == r.ledger.to_csv());
  // The seed drives the minibatch order.
  const std::vector<LabeledPoint> three{{0.1, 0}, {0.5, 1}, {0.9, 0}};
  cfg.batch_size = 1;
  cfg.epochs = 5;
  const std::string a = train_sgd(init, three, {}, cfg).ledger.to_csv();
  cfg.seed = 10;
  CHECK(train_sgd(init, three, {}, cfg).ledger.to_csv() != a);
}

TEST_CASE("ledger csv header and divergence") {
  const std::vector<LabeledPoint> data{{0.1, 0}, {0.9, 1}, {0.5, 1}};
  Rng rng(4);
  const std::size_t widths[] = {8};
  const FeedForwardNet init = random_net(widths, rng);
  TrainConfig cfg;
  cfg.epochs = 3;
  const TrainResult r = train_sgd(init, data, {}, cfg);
  CHECK(r.ledger.to_csv().rfind("epoch,loss_nats,complexity_bits,temperature,free_energy_nats,holdout_err\n", 0) == 0);

  cfg.learning_rate = 1e300;
  cfg.epochs = 50;
  try {
    train_sgd(init, data, {}, cfg);
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::divergence);
    CHECK(std::string(e.what()).find("epoch") != std::string::npos);
  }
}

TEST_CASE("net json round trip and input scaling") {
  Rng rng(5);
  const std::size_t widths[] = {8, 4};
  const FeedForwardNet net = random_net(widths, rng);
  const FeedForwardNet back = FeedForwardNet::from_json(net.to_json());
  for (double x = -3; x < 3; x += 0.1) CHECK(back.forward(x) == net.forward(x));
  const FeedForwardNet scaled = with_input_scale(net, 1.0 / 256);
  for (double x = 0; x < 512; x += 7) CHECK(scaled.forward(x) == doctest::Approx(net.forward(x / 256)).epsilon(1e-12));
  CHECK_THROWS_AS(FeedForwardNet({layer(1, 2, {1, 1}, {0, 0}, Activation::relu)}), Error);
}
