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

#ifndef SMALLVALUES_CERTIFIER_HPP_
#define SMALLVALUES_CERTIFIER_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smallvalues/config.hpp"
#include "smallvalues/hw.hpp"
#include "smallvalues/rational.hpp"
#include "smallvalues/schedule.hpp"

namespace smallvalues {

// A cubic form in s variables split into r parts a_1 <= ... <= a_r.
struct SplitShape {
  int r = 1;
  BigInt s;
  Family family = Family::kNine;

  // Family derived from r. Throws DomainError for r outside 1..6 or s < r.
  static SplitShape make(int r, const BigInt& s);
  void validate() const;
  friend bool operator==(const SplitShape&, const SplitShape&) = default;
};

// Proven bounds part-way through a chain: a_{r-1} >= lower_a_rm1 and, after
// the first step, a_r <= upper_a_r.
struct ChainState {
  Rational lower_a_rm1;
  std::optional<BigInt> upper_a_r;
  int step_index = 0;
};

struct InitialRecord {
  HwDerivation derivation;
  // (s - total) / (r - 1); unused when r = 1.
  Rational lower_a_rm1;
  friend bool operator==(const InitialRecord&, const InitialRecord&) = default;
};

struct ChainStepRecord {
  int index = 0;
  // ceil of the previous lower bound on a_{r-1}.
  BigInt guard_lower;
  Rational E1;
  HwDerivation hw2_at_E1;
  Rational E2;
  HwDerivation hw_at_E2;
  BigInt upper_a_r;
  Rational lower_a_rm1;
  friend bool operator==(const ChainStepRecord&, const ChainStepRecord&) = default;
};

enum class ConclusionKind {
  // r * upper_a_r < s contradicts a_r >= s / r.
  kContradiction,
  // r = 1: s = hw bound + 1 variables suffice outright.
  kDirect,
};

struct Conclusion {
  ConclusionKind kind = ConclusionKind::kContradiction;
  BigInt upper_a_r;      // contradiction
  BigInt r_times_upper;  // contradiction
  BigInt hw_total;       // direct
  BigInt certified_s;
  friend bool operator==(const Conclusion&, const Conclusion&) = default;
};

// Replayable record that every form splitting into shape.r parts with at
// least shape.s variables takes small values.
struct Certificate {
  SplitShape shape;
  Rational epsilon;
  InitialRecord initial;
  std::vector<ChainStepRecord> steps;
  Conclusion conclusion;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct FailureReport {
  SplitShape shape;
  // Identifier of the failed guard, e.g. "no initial traction".
  std::string guard;
  std::string message;
  ChainState last_state;
  std::optional<BigInt> initial_hw_total;
};

using CertifyOutcome = std::variant<Certificate, FailureReport>;

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> failed;
};

// Level and exponent of the initial bound: (10 - r, 27 - 3r + eps) for the
// nine-vector family, (9 - r, eps - 3 + 45(9 - r)/8) for eight.
HwQuery initial_query(const SplitShape& shape, const Rational& epsilon);
// Level of the bound on a_r inside the chain: 9 - r, or 8 - r.
int chain_level(const SplitShape& shape);

// (s - hw_value) / (r - 1). Throws RejectedStep("no initial traction") when
// hw_value >= s.
Rational initial_lower_bound(const SplitShape& shape, const BigInt& hw_value);

// One application of the two-part bound. Requires
// ceil(lower_a_rm1) > min_hw2_bound(E1), the family inequality for (E1, E2),
// that hw_at_E2 bounds level chain_level(shape) at exponent E2, and strict
// progress of upper_a_r. Throws RejectedStep naming the violated check.
ChainState chain_step(const ChainState& state, const SplitShape& shape,
                      const Rational& E1, const Rational& E2,
                      const HwDerivation& hw_at_E2);

// r * upper_a_r < s.
bool contradiction_reached(const ChainState& state, const SplitShape& shape);

// Runs the chain until a contradiction, a failed guard, or the iteration cap.
// A certificate is only returned after verify_certificate accepts it.
CertifyOutcome certify(const SplitShape& shape, const RunConfig& config);

// r = 1: s = hw^(9)(24 + eps) + 1 with the optimised schedule, or with the
// published one when `published_schedule` is set.
Certificate certify_r1(const RunConfig& config, bool published_schedule = false);

// Re-derives every number in the certificate with exact arithmetic, without
// touching the search code. Failed checks are listed by field path.
VerifyResult verify_certificate(const Certificate& cert);

// Split nine vectors into r near-equal groups; one more than the largest
// optimised group bound at exponent 24 + eps. Requires 1 <= r <= 9.
BigInt equal_parts_threshold(int r, const RunConfig& config);

struct SearchProbe {
  BigInt s;
  bool certified = false;
  std::string detail;
};

struct SearchReport {
  int r = 0;
  BigInt start;
  std::optional<BigInt> s_min;
  std::vector<SearchProbe> probes;
  // Successes found below a failure, if any.
  std::vector<std::string> non_monotone;
};

// Walks s down from `start` with a shrinking stride while certify succeeds.
// Every probe is reported; monotonicity in s is not assumed.
SearchReport find_min_certifiable_s(int r, const BigInt& start,
                                    const RunConfig& config,
                                    int max_probes = 48);

// A chain as printed: the initial bound and, per step, (E1, E2, bound).
struct PublishedChain {
  int r = 0;
  BigInt s;
  BigInt initial_bound;
  struct Step {
    Rational E1;
    Rational E2;
    BigInt bound;
  };
  std::vector<Step> steps;
};

struct ReplayReport {
  int r = 0;
  BigInt s;
  bool contradiction = false;
  bool within_published_bounds = true;
  std::vector<std::string> lines;
};

// Feeds the published (E1, E2) sequence through chain_step, with each bound
// computed by optimize_schedule and compared against the printed value.
ReplayReport replay_published_chain(const PublishedChain& chain,
                                    const RunConfig& config);

}  // namespace smallvalues

#endif  // SMALLVALUES_CERTIFIER_HPP_
