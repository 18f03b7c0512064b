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

#include "smallvalues/hw.hpp"

#include <string>

#include "smallvalues/errors.hpp"

namespace smallvalues {

void HwQuery::validate() const {
  if (n < 1) throw DomainError("hw query needs n >= 1, got " + std::to_string(n));
  if (E.sign() <= 0) throw DomainError("hw query needs E > 0, got " + E.to_string());
}

void DeltaSchedule::validate() const {
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i].sign() <= 0 || deltas[i] >= Rational(1)) {
      throw DomainError("delta[" + std::to_string(i) + "] = " +
                        deltas[i].to_string() + " is outside (0, 1)");
    }
  }
}

HwStep hw_step(int n_lower, const Rational& E, const Rational& delta) {
  if (n_lower < 1) throw DomainError("hw_step needs n_lower >= 1");
  if (E.sign() <= 0) throw DomainError("hw_step needs E > 0, got " + E.to_string());
  if (delta.sign() <= 0 || delta >= Rational(1)) {
    throw DomainError("delta " + delta.to_string() + " is outside (0, 1)");
  }
  const Rational e3 = E + Rational(3);
  const long pairs = static_cast<long>(n_lower) * (n_lower + 1) / 2;
  HwStep step;
  step.s = 1 + ceil(e3 * Rational(pairs));
  const Rational ss1(BigInt(step.s * (step.s + 1)));
  step.cost = ceil(ss1 * e3 / (Rational(2) * delta));
  step.E_next = (E + Rational(3) * delta) / (Rational(1) - delta);
  return step;
}

HwDerivation hw_bound(const HwQuery& query, const DeltaSchedule& schedule) {
  query.validate();
  if (schedule.size() != static_cast<std::size_t>(query.n - 1)) {
    throw ConfigError("schedule has " + std::to_string(schedule.size()) +
                      " deltas, level " + std::to_string(query.n) + " needs " +
                      std::to_string(query.n - 1));
  }
  schedule.validate();
  HwDerivation d;
  d.query = query;
  d.schedule = schedule;
  d.total = 0;
  Rational E = query.E;
  for (int i = 0; i + 1 < query.n; ++i) {
    const int level = query.n - i;
    const HwStep step = hw_step(level - 1, E, schedule.deltas[i]);
    d.levels.push_back({level, E, step.s, step.cost, step.E_next});
    d.total += step.cost;
    E = step.E_next;
  }
  return d;
}

const Rational& default_hw2_delta() {
  static const Rational v = Rational(1) - pow10_inverse(11);
  return v;
}

const Rational& min_search_delta() {
  static const Rational v = pow10_inverse(6);
  return v;
}

const Rational& max_search_delta() {
  static const Rational v = Rational(1) - pow10_inverse(12);
  return v;
}

BigInt hw2_bound(const Rational& E, const Rational& delta) {
  return hw_step(1, E, delta).cost;
}

BigInt min_hw2_bound(const Rational& E) { return hw2_bound(E, max_search_delta()); }

}  // namespace smallvalues
