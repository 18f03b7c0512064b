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

#ifndef SMALLVALUES_HW_HPP_
#define SMALLVALUES_HW_HPP_

#include <vector>

#include "smallvalues/rational.hpp"

namespace smallvalues {

// Upper bound request for the quasi-diagonalisation count at `n` vectors
// with error exponent `E`. Requires n >= 1 and E > 0.
struct HwQuery {
  int n = 1;
  Rational E;

  void validate() const;
  friend bool operator==(const HwQuery&, const HwQuery&) = default;
};

// One delta per recursion step; entry 0 applies at the top step n -> n-1.
struct DeltaSchedule {
  std::vector<Rational> deltas;

  std::size_t size() const { return deltas.size(); }
  bool empty() const { return deltas.empty(); }
  // Throws DomainError unless every delta is strictly inside (0, 1).
  void validate() const;
  friend bool operator==(const DeltaSchedule&, const DeltaSchedule&) = default;
  // Lexicographic, used as the optimizer's tie-break.
  friend bool operator<(const DeltaSchedule& a, const DeltaSchedule& b) {
    return a.deltas < b.deltas;
  }
};

struct HwStep {
  BigInt s;
  BigInt cost;
  Rational E_next;
};

// One level of a derivation: bounding level `level` in terms of level-1.
struct HwLevel {
  int level = 0;
  Rational E;
  BigInt s;
  BigInt cost;
  Rational E_next;

  friend bool operator==(const HwLevel&, const HwLevel&) = default;
};

struct HwDerivation {
  HwQuery query;
  DeltaSchedule schedule;
  std::vector<HwLevel> levels;
  BigInt total;

  friend bool operator==(const HwDerivation&, const HwDerivation&) = default;
};

// Corollary step bounding level n_lower+1 at exponent E:
//   s      = 1 + ceil((E+3) n_lower (n_lower+1) / 2)
//   cost   = ceil(s (s+1) (E+3) / (2 delta))
//   E_next = (E + 3 delta) / (1 - delta)
// Throws DomainError for n_lower < 1, E <= 0 or delta outside (0, 1).
HwStep hw_step(int n_lower, const Rational& E, const Rational& delta);

// Folds hw_step from level n down to level 2. The one-vector base level
// contributes nothing. Throws ConfigError when the schedule length is not
// n - 1.
HwDerivation hw_bound(const HwQuery& query, const DeltaSchedule& schedule);

// 1 - 10^-11, the top-level delta of the published nine-vector schedule.
const Rational& default_hw2_delta();
// Search box for every delta: [10^-6, 1 - 10^-12].
const Rational& min_search_delta();
const Rational& max_search_delta();

// Two-vector bound: ceil(s (s+1) (E+3) / (2 delta)), s = 1 + ceil(E+3).
BigInt hw2_bound(const Rational& E, const Rational& delta = default_hw2_delta());

// hw2_bound at the largest admissible delta. hw2_bound is nonincreasing in
// delta, so this is the minimum over the search box.
BigInt min_hw2_bound(const Rational& E);

}  // namespace smallvalues

#endif  // SMALLVALUES_HW_HPP_
