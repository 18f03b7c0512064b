// Copyright 2026 The smallvalues Authors
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

#include "doctest.h"
#include "smallvalues/errors.hpp"
#include "smallvalues/hw.hpp"
#include "smallvalues/schedule.hpp"

using namespace smallvalues;

namespace {
Rational eps() { return pow10_inverse(13); }
}  // namespace

TEST_CASE("base case") {
  const HwDerivation d = hw_bound({1, Rational(5)}, DeltaSchedule{});
  CHECK(d.total == 0);
  CHECK(d.levels.empty());
}

TEST_CASE("single step") {
  const HwStep st = hw_step(1, Rational(42), Rational(1, 2));
  CHECK(st.s == 46);
  CHECK(st.cost == 97290);
  CHECK(st.E_next == Rational(87));
}

TEST_CASE("anchor with the published schedule") {
  const HwDerivation d = hw_bound({9, Rational(24) + eps()}, published_nine_schedule());
  CHECK(d.total == 358823707);
  REQUIRE(d.levels.size() == 8);
  const long s[] = {974, 862, 751, 640, 529, 417, 306, 195};
  const long cost[] = {105146176, 82269035, 62402048, 45225453,
                       31040010,  19000611, 10033034, 3707340};
  for (int i = 0; i < 8; ++i) {
    CHECK(d.levels[i].level == 9 - i);
    CHECK(d.levels[i].s == s[i]);
    CHECK(d.levels[i].cost == cost[i]);
  }
  CHECK(d.levels[0].E_next == Rational(BigInt("243657843449611"), BigInt("8780718850130")));
  for (std::size_t i = 1; i < d.levels.size(); ++i) {
    CHECK(d.levels[i].E == d.levels[i - 1].E_next);
  }
}

TEST_CASE("two-vector values") {
  const struct {
    const char* E;
    long value;
  } cases[] = {{"47", 66301},     {"21.56", 8621},   {"17.76", 5253},  {"14.6992", 3363},
               {"42", 48646},     {"11.52", 1975},   {"12", 2041},     {"15.215", 3826},
               {"16", 3991},      {"43", 51889},     {"12.705", 2403}, {"40", 42571},
               {"267", 9951121},  {"10.6989", 1644}, {"20.935", 7779}, {"143", 1588189},
               {"42+1e-13", 50761}};
  for (const auto& c : cases) {
    CAPTURE(c.E);
    CHECK(hw2_bound(parse_decimal(c.E)) == c.value);
  }
}

TEST_CASE("two-vector bound is nondecreasing in E") {
  BigInt prev = 0;
  for (int k = 100; k <= 5000; ++k) {
    const BigInt v = hw2_bound(Rational(k, 100));
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("larger delta at the top never hurts the two-vector bound") {
  for (int k = 1; k <= 50; ++k) {
    CHECK(min_hw2_bound(Rational(k)) <= hw2_bound(Rational(k)));
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(hw_bound({2, Rational(5)}, DeltaSchedule{{Rational(1, 2), Rational(1, 2)}}),
                  ConfigError);
  CHECK_THROWS_AS(hw_bound({2, Rational(5)}, DeltaSchedule{{Rational(1)}}), DomainError);
  CHECK_THROWS_AS(hw_bound({2, Rational(5)}, DeltaSchedule{{Rational(0)}}), DomainError);
  CHECK_THROWS_AS(hw_bound({0, Rational(5)}, DeltaSchedule{}), DomainError);
  CHECK_THROWS_AS(hw_bound({2, Rational(-1)}, DeltaSchedule{{Rational(1, 2)}}),
                  DomainError);
}

TEST_CASE("each level's cost matches a direct step") {
  const HwDerivation d = hw_bound({9, Rational(24) + eps()}, published_nine_schedule());
  BigInt sum = 0;
  for (std::size_t i = 0; i < d.levels.size(); ++i) {
    const HwStep st = hw_step(d.levels[i].level - 1, d.levels[i].E, d.schedule.deltas[i]);
    CHECK(st.cost == d.levels[i].cost);
    sum += st.cost;
  }
  CHECK(sum == d.total);
}

TEST_CASE("small step") {
  const HwStep st = hw_step(1, Rational(1), Rational(1, 2));
  CHECK(st.s == 5);
  CHECK(st.cost == 120);
  CHECK(st.E_next == Rational(5));
}

TEST_CASE("two-vector bound is nonincreasing in delta") {
  for (int e = 1; e <= 60; e += 7) {
    BigInt prev = hw2_bound(Rational(e), Rational(1, 100));
    for (int k = 2; k < 100; ++k) {
      const BigInt v = hw2_bound(Rational(e), Rational(k, 100));
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("trace invariants on optimised derivations") {
  for (int n = 2; n <= 9; ++n) {
    for (const char* e : {"1", "13.875+1e-13", "24+1e-13", "41.132"}) {
      const HwDerivation d = optimize_schedule({n, parse_decimal(e)}, {}).derivation;
      for (const HwLevel& lv : d.levels) {
        CHECK(lv.s >= 2);
        CHECK(lv.cost >= 1);
        CHECK(lv.E_next > lv.E);
      }
      CHECK(hw_bound(d.query, d.schedule) == d);
    }
  }
}

TEST_CASE("bound total is nondecreasing in E for a fixed schedule") {
  const DeltaSchedule& s = published_nine_schedule();
  BigInt prev = 0;
  for (int k = 1; k <= 300; ++k) {
    const BigInt v = hw_bound({9, Rational(k, 10)}, s).total;
    CHECK(v >= prev);
    prev = v;
  }
}
