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

#include "neural/pwl.hpp"

#include <algorithm>
#include <cmath>

#include "util/error.hpp"

namespace conceptlab::neural {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-unit affine pieces over a shared segmentation.
struct UnitPieces {
  std::vector<double> breakpoints;
  // [unit][segment]
  std::vector<std::vector<double>> slope;
  std::vector<std::vector<double>> intercept;

  std::size_t segments() const { return breakpoints.size() + 1; }
  double left(std::size_t s) const { return s == 0 ? -kInf : breakpoints[s - 1]; }
  double right(std::size_t s) const { return s == breakpoints.size() ? kInf : breakpoints[s]; }
};

double representative(double lo, double hi) {
  if (std::isinf(lo) && std::isinf(hi)) return 0.0;
  if (std::isinf(lo)) return hi - 1.0;
  if (std::isinf(hi)) return lo + 1.0;
  return lo + 0.5 * (hi - lo);
}

UnitPieces affine_layer(const UnitPieces& in, const DenseLayer& layer) {
  UnitPieces out;
  out.breakpoints = in.breakpoints;
  const std::size_t segs = in.segments();
  out.slope.assign(layer.outputs, std::vector<double>(segs, 0.0));
  out.intercept.assign(layer.outputs, std::vector<double>(segs, 0.0));
  for (std::size_t r = 0; r < layer.outputs; ++r) {
    auto& sl = out.slope[r];
    auto& ic = out.intercept[r];
    std::fill(ic.begin(), ic.end(), layer.bias[r]);
    for (std::size_t c = 0; c < layer.inputs; ++c) {
      const double w = layer.weight(r, c);
      if (w == 0.0) continue;
      const auto& isl = in.slope[c];
      const auto& iic = in.intercept[c];
      for (std::size_t s = 0; s < segs; ++s) {
        sl[s] += w * isl[s];
        ic[s] += w * iic[s];
      }
    }
  }
  return out;
}

UnitPieces relu_layer(const UnitPieces& in, std::size_t piece_cap) {
  std::vector<double> cuts;
  for (std::size_t u = 0; u < in.slope.size(); ++u) {
    for (std::size_t s = 0; s < in.segments(); ++s) {
      const double a = in.slope[u][s];
      if (a == 0.0) continue;
      const double x0 = -in.intercept[u][s] / a;
      if (x0 > in.left(s) && x0 < in.right(s)) cuts.push_back(x0);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  UnitPieces out;
  std::merge(in.breakpoints.begin(), in.breakpoints.end(), cuts.begin(), cuts.end(),
             std::back_inserter(out.breakpoints));
  out.breakpoints.erase(std::unique(out.breakpoints.begin(), out.breakpoints.end()),
                        out.breakpoints.end());
  if (out.segments() > piece_cap) {
    throw Error(ErrorCode::complexity_cap,
                "piecewise-linear analysis exceeds " + std::to_string(piece_cap) + " pieces");
  }
  // Map each refined segment to the coarse segment containing it.
  const std::size_t segs = out.segments();
  std::vector<std::size_t> parent(segs);
  std::vector<double> probe(segs);
  std::size_t coarse = 0;
  for (std::size_t s = 0; s < segs; ++s) {
    probe[s] = representative(out.left(s), out.right(s));
    while (coarse < in.breakpoints.size() && probe[s] > in.breakpoints[coarse]) ++coarse;
    parent[s] = coarse;
  }
  out.slope.assign(in.slope.size(), std::vector<double>(segs, 0.0));
  out.intercept.assign(in.slope.size(), std::vector<double>(segs, 0.0));
  for (std::size_t u = 0; u < in.slope.size(); ++u) {
    for (std::size_t s = 0; s < segs; ++s) {
      const double a = in.slope[u][parent[s]];
      const double b = in.intercept[u][parent[s]];
      if (a * probe[s] + b > 0.0) {
        out.slope[u][s] = a;
        out.intercept[u][s] = b;
      }
    }
  }
  return out;
}

}  // namespace

std::size_t PwlFunction::segment_of(double x) const {
  return static_cast<std::size_t>(std::upper_bound(breakpoints.begin(), breakpoints.end(), x) -
                                  breakpoints.begin());
}

double PwlFunction::operator()(double x) const {
  const std::size_t s = segment_of(x);
  return slopes[s] * x + intercepts[s];
}

std::vector<Interval> PwlFunction::superlevel_set(double level) const {
  std::vector<Interval> out;
  auto push = [&](double lo, double hi) {
    if (!out.empty() && out.back().hi >= lo) {
      out.back().hi = std::max(out.back().hi, hi);
    } else {
      out.push_back({lo, hi});
    }
  };
  for (std::size_t s = 0; s < pieces(); ++s) {
    const double lo = s == 0 ? -kInf : breakpoints[s - 1];
    const double hi = s == breakpoints.size() ? kInf : breakpoints[s];
    const double a = slopes[s];
    const double b = intercepts[s] - level;
    if (a == 0.0) {
      if (b >= 0.0) push(lo, hi);
      continue;
    }
    const double x0 = -b / a;
    if (a > 0.0) {
      const double from = std::max(lo, x0);
      if (from <= hi) push(from, hi);
    } else {
      const double to = std::min(hi, x0);
      if (lo <= to) push(lo, to);
    }
  }
  return out;
}

PwlFunction exact_pwl(const FeedForwardNet& net, const PwlOptions& options) {
  UnitPieces pieces;
  pieces.slope = {{1.0}};
  pieces.intercept = {{0.0}};
  for (const DenseLayer& layer : net.layers()) {
    pieces = affine_layer(pieces, layer);
    if (layer.activation == Activation::relu) pieces = relu_layer(pieces, options.piece_cap);
  }
  PwlFunction f;
  const std::size_t segs = pieces.segments();
  f.slopes.push_back(pieces.slope[0][0]);
  f.intercepts.push_back(pieces.intercept[0][0]);
  for (std::size_t s = 1; s < segs; ++s) {
    const double a = pieces.slope[0][s];
    const double b = pieces.intercept[0][s];
    if (a == f.slopes.back() && b == f.intercepts.back()) continue;
    f.breakpoints.push_back(pieces.breakpoints[s - 1]);
    f.slopes.push_back(a);
    f.intercepts.push_back(b);
  }
  return f;
}

double piece_bound(const FeedForwardNet& net) {
  double bound = 1.0;
  for (const DenseLayer& layer : net.layers()) {
    if (layer.activation == Activation::relu) bound *= 1.0 + static_cast<double>(layer.outputs);
  }
  return bound;
}

namespace {

bool misclassified(const FeedForwardNet& net, std::uint64_t n) {
  return net.classify(static_cast<double>(n)) != (n % 2 == 0);
}

}  // namespace

ParityCounterexample falsify_parity(const FeedForwardNet& net, const FalsifyOptions& options) {
  const PwlFunction f = exact_pwl(net, options.pwl);
  const double a = f.slopes.back();
  const double b = f.intercepts.back();
  double tail = f.breakpoints.empty() ? -kInf : f.breakpoints.back();
  if (a != 0.0) tail = std::max(tail, (FeedForwardNet::kDecisionLevel - b) / a);

  ParityCounterexample result;
  result.tail_start = tail;
  const double start = std::max(tail, 0.0);
  // m = 2 * ceil(start / 2) + 2, clamped to what a 64-bit natural can hold.
  const double m_real = 2.0 * std::ceil(start / 2.0) + 2.0;
  constexpr double kLimit = 9.0e18;
  std::uint64_t m = m_real < kLimit ? static_cast<std::uint64_t>(m_real) : 9'000'000'000'000'000'000ULL;
  result.tail_witness = m;

  const std::uint64_t scan_end = std::min<std::uint64_t>(m + 1, options.scan_limit);
  for (std::uint64_t n = 0; n <= scan_end; ++n) {
    if (misclassified(net, n)) {
      result.n = n;
      result.verified = true;
      result.found_by_scan = true;
      return result;
    }
  }
  // Beyond the tail both m and m + 1 share a class, so one of them is wrong.
  // Floating-point evaluation near a shallow crossing can disagree with the
  // exact analysis; step further out in that case.
  for (int attempt = 0; attempt < 64; ++attempt, m += 2) {
    if (misclassified(net, m)) {
      result.n = m;
      result.verified = true;
      return result;
    }
    if (misclassified(net, m + 1)) {
      result.n = m + 1;
      result.verified = true;
      return result;
    }
  }
  result.n = result.tail_witness + (net.classify(static_cast<double>(result.tail_witness)) ? 1 : 0);
  result.verified = misclassified(net, result.n);
  return result;
}

}  // namespace conceptlab::neural
