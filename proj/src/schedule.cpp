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

#include "smallvalues/schedule.hpp"

#include <string>

#include "smallvalues/errors.hpp"

namespace smallvalues {

Family family_for(int r) {
  if (r >= 1 && r <= 4) return Family::kNine;
  if (r == 5 || r == 6) return Family::kEight;
  throw DomainError("number of parts r = " + std::to_string(r) +
                    " is outside 1..6");
}

std::string_view to_string(Family family) {
  return family == Family::kNine ? "nine" : "eight";
}

Family parse_family(std::string_view text) {
  if (text == "nine") return Family::kNine;
  if (text == "eight") return Family::kEight;
  throw ParseError("unknown family \"" + std::string(text) + "\"");
}

const DeltaSchedule& published_nine_schedule() {
  static const DeltaSchedule schedule = [] {
    DeltaSchedule s;
    for (const char* d :
         {"0.1219281149870", "0.1390225846301", "0.1616109852315",
          "0.1932063685387", "0.238458929161", "0.3180206725264",
          "0.4759560851055", "0.99999999999"}) {
      s.deltas.push_back(parse_decimal(d));
    }
    return s;
  }();
  return schedule;
}

bool is_published_nine_query(const HwQuery& query) {
  static const Rational E = parse_decimal("24+1e-13");
  return query.n == 9 && query.E == E;
}

Rational max_E1(const BigInt& L, const Rational& granularity) {
  if (granularity.sign() <= 0) throw DomainError("granularity must be positive");
  const BigInt limit = L - 1;
  auto feasible = [&](long k) {
    return min_hw2_bound(granularity * Rational(k)) <= limit;
  };
  if (L < 1 || !feasible(1)) {
    throw InfeasibleError("no E1 on the grid has a two-vector bound below L = " +
                          to_string(L));
  }
  long lo = 1, hi = 2;
  while (feasible(hi)) {
    lo = hi;
    hi *= 2;
  }
  // feasible(lo) && !feasible(hi)
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (feasible(mid) ? lo : hi) = mid;
  }
  return granularity * Rational(lo);
}

namespace {

void check_family(int r, Family family) {
  if (family_for(r) != family || r < 2) {
    throw DomainError("r = " + std::to_string(r) + " is not a " +
                      std::string(to_string(family)) + "-vector chain shape");
  }
}

Rational eight_h1(const Rational& E1) {
  return (Rational(4) * E1 - Rational(33)) / Rational(45);
}

Rational eight_h2(const Rational& E2, int r) {
  return Rational(r - 8) + Rational(8) * (E2 + Rational(3)) / Rational(45);
}

}  // namespace

Rational min_E2(const Rational& E1, int r, Family family,
                const Rational& margin) {
  check_family(r, family);
  if (margin.sign() <= 0) throw DomainError("margin must be positive");
  if (family == Family::kNine) {
    if (E1 <= Rational(3)) {
      throw DomainError("E1 too small for family nine: E1 = " + E1.to_string() +
                        " must exceed 3");
    }
    return Rational(3 * (8 - r)) + Rational(18 * (9 - r)) / (E1 - Rational(3)) +
           margin;
  }
  const Rational h1 = eight_h1(E1);
  if (h1.sign() <= 0) {
    throw DomainError("E1 too small for family eight: H1 = (4E1-33)/45 = " +
                      h1.to_string() + " must be positive");
  }
  const Rational h2 = Rational(8 - r) / h1 + margin;
  return Rational(45) * (h2 + Rational(8 - r)) / Rational(8) - Rational(3);
}

bool family_constraint_holds(const Rational& E1, const Rational& E2, int r,
                             Family family) {
  if (family == Family::kNine) {
    return E1 > Rational(3) &&
           (E1 - Rational(3)) * (E2 - Rational(3 * (8 - r))) >
               Rational(18 * (9 - r));
  }
  const Rational h1 = eight_h1(E1);
  return h1.sign() > 0 && h1 * eight_h2(E2, r) > Rational(8 - r);
}

}  // namespace smallvalues
