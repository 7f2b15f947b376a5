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

#include <algorithm>
#include <variant>

#include "concept/concept.hpp"
#include "doctest.h"
#include "dsl/enumerate.hpp"
#include "util/error.hpp"

using namespace conceptlab;
using dsl::parse;

namespace {

const dsl::Program kEven = parse("(pred (eq (mod x 2) 0))");

std::vector<Natural> take(Generator& g, int count, Natural budget = 1'000'000) {
  std::vector<Natural> out;
  for (int i = 0; i < count; ++i) {
    auto r = g.next(budget);
    REQUIRE(std::holds_alternative<Natural>(r));
    out.push_back(std::get<Natural>(r));
  }
  return out;
}

}  // namespace

TEST_CASE("complete stream labels") {
  EffluxStream s(Concept(kEven), StreamMode::complete_supervised);
  const Observation first = s.next();
  CHECK(first.x == 0);
  CHECK(first.y == true);
  for (int i = 1; i < 7; ++i) s.next();
  const Observation seventh = s.next();
  CHECK(seventh.x == 7);
  CHECK(seventh.y == false);
}

TEST_CASE("one-sided stream skips zero and emits increasing positives") {
  EffluxStream s(Concept(dsl::multiples_of(2)), StreamMode::one_sided_positive);
  CHECK(s.next().x == 2);
  CHECK(s.next().x == 4);
  const Observation third = s.next();
  CHECK(third.x == 6);
  CHECK(third.y.value_or(true));
}

TEST_CASE("one-sided stream of a finite concept is exhausted") {
  EffluxStream s(Concept(parse("(pred (eq x 2))")), StreamMode::one_sided_positive, 1000);
  CHECK(s.next().x == 2);
  try {
    s.next();
    FAIL("expected exhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::exhausted);
  }
}

TEST_CASE("generator examples") {
  Generator even = discriminator_to_generator(kEven);
  const auto v = take(even, 8);
  CHECK(v[0] == 0);
  CHECK(v[1] == 2);
  CHECK(v[2] == 4);
  CHECK(v[7] == 14);

  // Oracle: brute-force scan for multiples of three.
  Generator three = discriminator_to_generator(dsl::multiples_of(3));
  std::vector<Natural> scan;
  for (Natural n = 0; scan.size() < 5; ++n) {
    if (n % 3 == 0) scan.push_back(n);
  }
  CHECK(take(three, 5) == scan);
  CHECK(scan[4] == 12);

  Generator single = discriminator_to_generator(parse("(pred (eq x 2))"));
  CHECK(std::get<Natural>(single.next(1000)) == 2);
  CHECK(std::holds_alternative<BudgetExceeded>(single.next(1000)));
}

TEST_CASE("generator sets equal discriminator sets for all programs of size <= 5") {
  const Natural limit = 512;
  for (std::uint64_t i = 0; i < dsl::programs_below_size(6); ++i) {
    const dsl::Program p = dsl::enumerate(i);
    std::vector<Natural> expected;
    for (Natural n = 0; n <= limit; ++n) {
      if (dsl::eval(p, n)) expected.push_back(n);
    }
    Generator g(p);
    std::vector<Natural> got;
    for (;;) {
      const Natural remaining = limit + 1 - g.position();
      if (g.position() > limit) break;
      auto r = g.next(remaining);
      if (std::holds_alternative<BudgetExceeded>(r)) break;
      const Natural n = std::get<Natural>(r);
      if (n > limit) break;
      got.push_back(n);
    }
    if (got != expected) FAIL("generator mismatch for " << p.to_string());
  }
}

TEST_CASE("complete streams are gap-free and permutation-free") {
  for (std::uint64_t i : {0ULL, 17ULL, 179ULL, 5000ULL}) {
    const dsl::Program p = dsl::enumerate(i);
    EffluxStream s(Concept(p), StreamMode::complete_supervised);
    for (Natural t = 0; t < 300; ++t) {
      const Observation o = s.next();
      CHECK(o.x == t);
      REQUIRE(o.y.has_value());
      CHECK(*o.y == dsl::eval(p, t));
    }
  }
}

TEST_CASE("concept membership beyond the cache") {
  const Concept c(kEven, 16);
  CHECK(c.contains(4));
  CHECK(c.contains(1'000'000));
  CHECK_FALSE(c.contains(1'000'001));
  CHECK(extension_equal_on_prefix(kEven, parse("(pred (eq 0 (mod x 2)))"), 10000));
  CHECK_FALSE(extension_equal_on_prefix(kEven, dsl::multiples_of(4), 10000));
}

TEST_CASE("observation serialization") {
  const std::vector<Observation> obs{{0, true}, {1, false}, {4, std::nullopt}};
  const std::string csv = observations_to_csv(obs);
  CHECK(csv.rfind("x,y\n", 0) == 0);
  CHECK(csv.find("0,1\n") != std::string::npos);
  CHECK(csv.find("1,0\n") != std::string::npos);
  const std::string jl = observations_to_jsonl(obs);
  CHECK(std::count(jl.begin(), jl.end(), '\n') == 3);
  CHECK(parse_stream_mode(stream_mode_name(StreamMode::one_sided_positive)) ==
        StreamMode::one_sided_positive);
}
