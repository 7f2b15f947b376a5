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
#include <vector>

#include "neural/net.hpp"

namespace conceptlab::neural {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

// Continuous piecewise-affine function of one variable. Segment i covers
// [breakpoints[i-1], breakpoints[i]] with the outer segments unbounded.
struct PwlFunction {
  std::vector<double> breakpoints;  // strictly increasing
  std::vector<double> slopes;       // breakpoints.size() + 1
  std::vector<double> intercepts;   // breakpoints.size() + 1

  std::size_t pieces() const { return slopes.size(); }
  std::size_t segment_of(double x) const;
  double operator()(double x) const;
  // {x : f(x) >= level} as a sorted union of disjoint closed intervals.
  std::vector<Interval> superlevel_set(double level) const;
};

struct PwlOptions {
  std::size_t piece_cap = 1'000'000;
};

// Exact input -> output map of a ReLU/identity network. Throws
// Error(complexity_cap) when the piece count exceeds the cap.
PwlFunction exact_pwl(const FeedForwardNet& net, const PwlOptions& options = {});

// Upper bound on the piece count: product over hidden layers of (1 + width).
double piece_bound(const FeedForwardNet& net);

struct ParityCounterexample {
  std::uint64_t n = 0;
  // Checked by evaluating the network directly on n.
  bool verified = false;
  // Beyond this point the network's class is constant.
  double tail_start = 0.0;
  // The first integer of the constant-class tail pair (m, m + 1).
  std::uint64_t tail_witness = 0;
  bool found_by_scan = false;
};

struct FalsifyOptions {
  // Integers 0..scan_limit are checked for an earlier counterexample before
  // falling back to the tail witness.
  std::uint64_t scan_limit = 1u << 16;
  PwlOptions pwl;
};

// Returns an integer whose parity the network's thresholded output gets wrong.
// The tail argument guarantees one exists among m, m + 1 where m is the first
// even integer at least 2 past the last breakpoint and the last level crossing;
// the reported n is the smallest misclassified integer up to that witness
// (within scan_limit).
ParityCounterexample falsify_parity(const FeedForwardNet& net, const FalsifyOptions& options = {});

}  // namespace conceptlab::neural
