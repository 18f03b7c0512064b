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

// Certificate checking. Deliberately shares nothing with the hw engine or
// the optimizer beyond Rational: every formula is restated here.

#include <string>
#include <vector>

#include "smallvalues/certifier.hpp"

namespace smallvalues {
namespace {

class Checker {
 public:
  void expect(bool ok, const std::string& id) {
    if (!ok) failed_.push_back(id);
  }
  std::vector<std::string> take() { return std::move(failed_); }

 private:
  std::vector<std::string> failed_;
};

const Rational kOne(1);
const Rational kThree(3);

// Re-executes a derivation level by level. Returns false (and records why)
// if any recorded number disagrees with the recomputation.
bool check_derivation(const HwDerivation& d, int expected_n,
                      const Rational& expected_E, const std::string& path,
                      Checker& ck) {
  bool ok = true;
  auto expect = [&](bool cond, const std::string& id) {
    ck.expect(cond, path + "." + id);
    ok = ok && cond;
  };
  expect(d.query.n == expected_n, "query.n");
  expect(d.query.E == expected_E, "query.E");
  expect(d.query.E.sign() > 0, "query.E.positive");
  if (d.query.n < 1 ||
      d.schedule.deltas.size() != static_cast<std::size_t>(d.query.n - 1) ||
      d.levels.size() != d.schedule.deltas.size()) {
    expect(false, "shape");
    return false;
  }
  Rational E = d.query.E;
  BigInt total = 0;
  for (std::size_t i = 0; i < d.levels.size(); ++i) {
    const std::string at = "levels[" + std::to_string(i) + "]";
    const HwLevel& lv = d.levels[i];
    const Rational& delta = d.schedule.deltas[i];
    const bool delta_ok = delta.sign() > 0 && delta < kOne;
    expect(delta_ok, "schedule[" + std::to_string(i) + "]");
    const int level = d.query.n - static_cast<int>(i);
    expect(lv.level == level, at + ".level");
    expect(lv.E == E, at + ".E");
    if (!delta_ok) return false;
    const long m = level - 1;
    const BigInt s = 1 + ceil((E + kThree) * Rational(m * (m + 1) / 2));
    expect(lv.s == s, at + ".s");
    const BigInt cost =
        ceil(Rational(BigInt(s * (s + 1))) * (E + kThree) / (Rational(2) * delta));
    expect(lv.cost == cost, at + ".cost");
    const Rational next = (E + kThree * delta) / (kOne - delta);
    expect(lv.E_next == next, at + ".E_next");
    expect(next > E, at + ".E_next.increasing");
    total += cost;
    E = next;
  }
  expect(d.total == total, "total");
  return ok;
}

bool nine_inequality(const Rational& E1, const Rational& E2, int r) {
  return E1 > kThree &&
         (E1 - kThree) * (E2 - Rational(3 * (8 - r))) > Rational(18 * (9 - r));
}

bool eight_inequality(const Rational& E1, const Rational& E2, int r) {
  const Rational h1 = (Rational(4) * E1 - Rational(33)) / Rational(45);
  const Rational h2 =
      Rational(r - 8) + Rational(8) * (E2 + kThree) / Rational(45);
  return h1.sign() > 0 && h1 * h2 > Rational(8 - r);
}

}  // namespace

VerifyResult verify_certificate(const Certificate& cert) {
  Checker ck;
  const SplitShape& shape = cert.shape;
  const int r = shape.r;
  const bool r_ok = r >= 1 && r <= 6;
  ck.expect(r_ok, "shape.r");
  if (!r_ok) return {false, ck.take()};
  const Family family = r <= 4 ? Family::kNine : Family::kEight;
  ck.expect(shape.family == family, "shape.family");
  ck.expect(shape.s >= r, "shape.s");
  ck.expect(cert.epsilon.sign() > 0, "epsilon");

  Rational E0;
  int n0 = 0;
  if (r == 1) {
    n0 = 9;
    E0 = Rational(24) + cert.epsilon;
  } else if (family == Family::kNine) {
    n0 = 10 - r;
    E0 = Rational(27 - 3 * r) + cert.epsilon;
  } else {
    n0 = 9 - r;
    E0 = cert.epsilon - kThree + Rational(45 * (9 - r)) / Rational(8);
  }
  check_derivation(cert.initial.derivation, n0, E0, "initial.derivation", ck);
  const BigInt& hw0 = cert.initial.derivation.total;

  if (r == 1) {
    const Conclusion& c = cert.conclusion;
    ck.expect(c.kind == ConclusionKind::kDirect, "conclusion.kind");
    ck.expect(cert.steps.empty(), "steps");
    ck.expect(c.hw_total == hw0, "conclusion.hw_total");
    ck.expect(c.certified_s == hw0 + 1, "conclusion.certified_s");
    ck.expect(shape.s == c.certified_s, "shape.s");
    auto failed = ck.take();
    return {failed.empty(), std::move(failed)};
  }

  const Rational parts(r - 1);
  ck.expect(hw0 < shape.s, "initial.traction");
  ck.expect(cert.initial.lower_a_rm1 == Rational(BigInt(shape.s - hw0)) / parts,
            "initial.lower_a_rm1");
  ck.expect(!cert.steps.empty(), "steps");

  const int level = family == Family::kNine ? 9 - r : 8 - r;
  Rational lower = cert.initial.lower_a_rm1;
  std::optional<BigInt> upper;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const ChainStepRecord& st = cert.steps[i];
    const std::string at = "steps[" + std::to_string(i) + "]";
    ck.expect(st.index == static_cast<int>(i) + 1, at + ".index");
    ck.expect(st.guard_lower == ceil(lower), at + ".guard_lower");
    // a_{r-1} >= ceil(lower) > hw2(E1)
    if (check_derivation(st.hw2_at_E1, 2, st.E1, at + ".hw2_at_E1", ck)) {
      ck.expect(ceil(lower) > st.hw2_at_E1.total, at + ".guard");
    }
    ck.expect(family == Family::kNine ? nine_inequality(st.E1, st.E2, r)
                                      : eight_inequality(st.E1, st.E2, r),
              at + ".family_inequality");
    check_derivation(st.hw_at_E2, level, st.E2, at + ".hw_at_E2", ck);
    ck.expect(st.upper_a_r == st.hw_at_E2.total, at + ".upper_a_r");
    if (upper) ck.expect(st.upper_a_r < *upper, at + ".progress");
    ck.expect(st.lower_a_rm1 == Rational(BigInt(shape.s - st.upper_a_r)) / parts,
              at + ".lower_a_rm1");
    upper = st.upper_a_r;
    lower = st.lower_a_rm1;
  }

  const Conclusion& c = cert.conclusion;
  ck.expect(c.kind == ConclusionKind::kContradiction, "conclusion.kind");
  if (upper) ck.expect(c.upper_a_r == *upper, "conclusion.upper_a_r");
  ck.expect(c.r_times_upper == r * c.upper_a_r, "conclusion.r_times_upper");
  ck.expect(c.certified_s == shape.s, "conclusion.certified_s");
  ck.expect(c.r_times_upper < shape.s, "conclusion.contradiction");
  auto failed = ck.take();
  return {failed.empty(), std::move(failed)};
}

}  // namespace smallvalues
