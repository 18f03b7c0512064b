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

#ifndef SMALLVALUES_SCHEDULE_HPP_
#define SMALLVALUES_SCHEDULE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "smallvalues/hw.hpp"
#include "smallvalues/rational.hpp"

namespace smallvalues {

// How many quasi-diagonalising vectors a split-form chain uses: nine for
// r = 1..4, eight for r = 5, 6.
enum class Family { kNine, kEight };

// Throws DomainError for r outside 1..6.
Family family_for(int r);
std::string_view to_string(Family family);
Family parse_family(std::string_view text);

struct OptimizerOptions {
  // Surrogate objective evaluations spent on coordinate descent.
  long budget = 20000;
  std::uint64_t seed = 0;
  // 0 picks SMALLVALUES_THREADS, else the hardware concurrency.
  unsigned threads = 0;
  std::optional<DeltaSchedule> warm_start;
  // Receives one "candidate <total> ..." line per exactly evaluated schedule.
  std::function<void(const std::string&)> progress;
};

struct OptimizeResult {
  DeltaSchedule schedule;
  HwDerivation derivation;
  long evaluations = 0;
};

// Searches for a delta schedule minimising hw_bound(query, .).
//
// The search runs cyclic coordinate descent with golden-section line search
// on the ceiling-free relaxation from a fixed start (all deltas 0.25) plus
// seed-driven random restarts. Each trajectory then seeds a dynamic program
// over the exponent sequence that sees the ceilings: consecutive exponents
// interact only through one cost term, and candidate exponents sit on the
// jump points of the next level's s. Every candidate is rebuilt as a finite
// decimal schedule and evaluated exactly; the best exact total wins, ties
// going to the lexicographically smaller schedule. Output depends only on
// (query, budget, seed, warm_start), never on the thread count.
//
// For the published nine-vector query (n = 9, E = 24 + 10^-13) the
// published schedule is always added as a warm start.
OptimizeResult optimize_schedule(const HwQuery& query,
                                 const OptimizerOptions& options = {});

// The eight deltas published for n = 9, E = 24 + 10^-13.
const DeltaSchedule& published_nine_schedule();
bool is_published_nine_query(const HwQuery& query);

// Largest E = k * granularity (k >= 1) with min_hw2_bound(E) <= L - 1, so a
// part of integer dimension >= L strictly exceeds the two-vector bound.
// Throws InfeasibleError when even k = 1 fails.
Rational max_E1(const BigInt& L, const Rational& granularity);

// Smallest-by-margin E2 satisfying the two-part bound for the family:
//   nine:  (E1 - 3)(E2 - 3(8 - r)) > 18(9 - r)
//   eight: H1 H2 > 8 - r, H1 = (4 E1 - 33)/45, H2 = r - 8 + 8(E2 + 3)/45
// Throws DomainError ("E1 too small for family") when E1 <= 3 (nine) or
// H1 <= 0 (eight), or when r does not belong to the family.
Rational min_E2(const Rational& E1, int r, Family family,
                const Rational& margin);

// The exact two-part inequality for (E1, E2).
bool family_constraint_holds(const Rational& E1, const Rational& E2, int r,
                             Family family);

}  // namespace smallvalues

#endif  // SMALLVALUES_SCHEDULE_HPP_
