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

#include "smallvalues/certifier.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "smallvalues/errors.hpp"

namespace smallvalues {

SplitShape SplitShape::make(int r, const BigInt& s) {
  SplitShape shape{r, s, family_for(r)};
  shape.validate();
  return shape;
}

void SplitShape::validate() const {
  if (family_for(r) != family) {
    throw DomainError("family " + std::string(to_string(family)) +
                      " does not match r = " + std::to_string(r));
  }
  if (s < r) {
    throw DomainError("s = " + to_string(s) + " is smaller than r = " +
                      std::to_string(r));
  }
}

HwQuery initial_query(const SplitShape& shape, const Rational& epsilon) {
  const int r = shape.r;
  if (r == 1) return {9, Rational(24) + epsilon};
  if (shape.family == Family::kNine) return {10 - r, Rational(27 - 3 * r) + epsilon};
  return {9 - r, epsilon - Rational(3) + Rational(45 * (9 - r)) / Rational(8)};
}

int chain_level(const SplitShape& shape) {
  return shape.family == Family::kNine ? 9 - shape.r : 8 - shape.r;
}

Rational initial_lower_bound(const SplitShape& shape, const BigInt& hw_value) {
  if (shape.r < 2) throw DomainError("chains need r >= 2");
  if (hw_value >= shape.s) {
    throw RejectedStep("no initial traction",
                       "no initial traction: initial bound " +
                           to_string(hw_value) + " >= s = " + to_string(shape.s));
  }
  return Rational(BigInt(shape.s - hw_value)) / Rational(shape.r - 1);
}

ChainState chain_step(const ChainState& state, const SplitShape& shape,
                      const Rational& E1, const Rational& E2,
                      const HwDerivation& hw_at_E2) {
  const BigInt guard = ceil(state.lower_a_rm1);
  const BigInt hw2 = min_hw2_bound(E1);
  if (!(guard > hw2)) {
    throw RejectedStep("a_{r-1} > hw2(E1)",
                       "rejected step: ceil(lower a_{r-1}) = " + to_string(guard) +
                           " does not exceed hw2(" + E1.to_string() +
                           ") = " + to_string(hw2));
  }
  if (!family_constraint_holds(E1, E2, shape.r, shape.family)) {
    throw RejectedStep(
        shape.family == Family::kNine ? "(E1-3)(E2-3(8-r)) > 18(9-r)"
                                      : "H1 > 0 and H1*H2 > 8-r",
        "rejected step: (E1, E2) = (" + E1.to_string() + ", " + E2.to_string() +
            ") violates the " + std::string(to_string(shape.family)) +
            "-vector inequality");
  }
  if (hw_at_E2.query.n != chain_level(shape) || hw_at_E2.query.E != E2) {
    throw RejectedStep("hw level/exponent",
                       "rejected step: bound is for level " +
                           std::to_string(hw_at_E2.query.n) + " at " +
                           hw_at_E2.query.E.to_string() + ", expected level " +
                           std::to_string(chain_level(shape)) + " at " +
                           E2.to_string());
  }
  if (state.upper_a_r && !(hw_at_E2.total < *state.upper_a_r)) {
    throw RejectedStep("progress", "stall: new bound " +
                                       to_string(hw_at_E2.total) +
                                       " does not improve on " +
                                       to_string(*state.upper_a_r));
  }
  ChainState next;
  next.upper_a_r = hw_at_E2.total;
  next.lower_a_rm1 =
      Rational(BigInt(shape.s - hw_at_E2.total)) / Rational(shape.r - 1);
  next.step_index = state.step_index + 1;
  return next;
}

bool contradiction_reached(const ChainState& state, const SplitShape& shape) {
  return state.upper_a_r && shape.r * *state.upper_a_r < shape.s;
}

namespace {

FailureReport failure(const SplitShape& shape, std::string guard,
                      std::string message, const ChainState& state,
                      std::optional<BigInt> initial_total) {
  return {shape, std::move(guard), std::move(message), state,
          std::move(initial_total)};
}

Certificate checked(Certificate cert) {
  const VerifyResult v = verify_certificate(cert);
  if (!v.ok) {
    std::string joined;
    for (const auto& f : v.failed) joined += (joined.empty() ? "" : ", ") + f;
    throw Error("internal error: emitted certificate failed verification: " +
                joined);
  }
  return cert;
}

}  // namespace

Certificate certify_r1(const RunConfig& config, bool published_schedule) {
  config.validate();
  const SplitShape probe{1, BigInt(1), Family::kNine};
  const HwQuery q = initial_query(probe, config.epsilon);
  HwDerivation d;
  if (published_schedule) {
    d = hw_bound(q, published_nine_schedule());
  } else {
    d = optimize_schedule(q, config.optimizer_options()).derivation;
  }
  Certificate cert;
  cert.shape = {1, BigInt(d.total + 1), Family::kNine};
  cert.epsilon = config.epsilon;
  cert.initial.derivation = std::move(d);
  cert.initial.lower_a_rm1 = Rational(0);
  cert.conclusion.kind = ConclusionKind::kDirect;
  cert.conclusion.hw_total = cert.initial.derivation.total;
  cert.conclusion.certified_s = cert.shape.s;
  return checked(std::move(cert));
}

CertifyOutcome certify(const SplitShape& shape_in, const RunConfig& config) {
  config.validate();
  shape_in.validate();
  const SplitShape& shape = shape_in;
  const OptimizerOptions opts = config.optimizer_options();

  if (shape.r == 1) {
    Certificate cert = certify_r1(config);
    if (cert.conclusion.certified_s > shape.s) {
      return failure(shape, "s >= hw^(9)(24+eps) + 1",
                     "s = " + to_string(shape.s) + " is below the certified " +
                         to_string(cert.conclusion.certified_s),
                     {}, cert.conclusion.hw_total);
    }
    return cert;
  }

  Certificate cert;
  cert.shape = shape;
  cert.epsilon = config.epsilon;
  cert.initial.derivation =
      optimize_schedule(initial_query(shape, config.epsilon), opts).derivation;
  const BigInt initial_total = cert.initial.derivation.total;

  ChainState state;
  try {
    state.lower_a_rm1 = initial_lower_bound(shape, initial_total);
  } catch (const RejectedStep& e) {
    return failure(shape, e.guard(), e.what(), state, initial_total);
  }
  cert.initial.lower_a_rm1 = state.lower_a_rm1;

  for (int it = 0; it < config.iteration_cap; ++it) {
    ChainStepRecord step;
    step.index = state.step_index + 1;
    step.guard_lower = ceil(state.lower_a_rm1);
    try {
      step.E1 = max_E1(step.guard_lower, config.granularity);
      step.E2 = min_E2(step.E1, shape.r, shape.family, config.margin);
    } catch (const InfeasibleError& e) {
      return failure(shape, "E1 feasible", e.what(), state, initial_total);
    } catch (const DomainError& e) {
      return failure(shape, "E1 too small for family", e.what(), state,
                     initial_total);
    }
    step.hw2_at_E1 = hw_bound({2, step.E1}, DeltaSchedule{{max_search_delta()}});
    step.hw_at_E2 =
        optimize_schedule({chain_level(shape), step.E2}, opts).derivation;
    try {
      state = chain_step(state, shape, step.E1, step.E2, step.hw_at_E2);
    } catch (const RejectedStep& e) {
      return failure(shape, e.guard(), e.what(), state, initial_total);
    }
    step.upper_a_r = *state.upper_a_r;
    step.lower_a_rm1 = state.lower_a_rm1;
    cert.steps.push_back(std::move(step));
    if (contradiction_reached(state, shape)) {
      cert.conclusion.kind = ConclusionKind::kContradiction;
      cert.conclusion.upper_a_r = *state.upper_a_r;
      cert.conclusion.r_times_upper = shape.r * *state.upper_a_r;
      cert.conclusion.certified_s = shape.s;
      return checked(std::move(cert));
    }
  }
  return failure(shape, "iteration cap",
                 "no contradiction within " +
                     std::to_string(config.iteration_cap) + " steps",
                 state, initial_total);
}

BigInt equal_parts_threshold(int r, const RunConfig& config) {
  if (r < 1 || r > 9) {
    throw DomainError("equal-parts threshold needs 1 <= r <= 9, got " +
                      std::to_string(r));
  }
  config.validate();
  // Largest of r near-equal groups.
  const int largest = (9 + r - 1) / r;
  const HwQuery q{largest, Rational(24) + config.epsilon};
  OptimizerOptions opts = config.optimizer_options();
  return optimize_schedule(q, opts).derivation.total + 1;
}

SearchReport find_min_certifiable_s(int r, const BigInt& start,
                                    const RunConfig& config, int max_probes) {
  if (r < 2 || r > 6) {
    throw DomainError("search needs 2 <= r <= 6, got " + std::to_string(r));
  }
  SearchReport report;
  report.r = r;
  report.start = start;
  auto probe = [&](const BigInt& s) {
    SearchProbe p{s, false, {}};
    if (s < r) {
      p.detail = "s < r";
    } else {
      const CertifyOutcome out = certify(SplitShape::make(r, s), config);
      if (const auto* c = std::get_if<Certificate>(&out)) {
        p.certified = true;
        p.detail = std::to_string(c->steps.size()) + " steps";
      } else {
        const auto& f = std::get<FailureReport>(out);
        p.detail = f.guard;
      }
    }
    report.probes.push_back(p);
    return p.certified;
  };

  BigInt hi = start;  // least certified so far
  BigInt stride = std::max(BigInt(start / 1000), BigInt(1));
  if (!probe(start)) return report;
  report.s_min = start;
  while (static_cast<int>(report.probes.size()) < max_probes) {
    const BigInt s = hi - stride;
    if (s < r) break;
    if (probe(s)) {
      hi = s;
      report.s_min = s;
    } else {
      if (stride == 1) break;
      stride = std::max(BigInt(stride / 2), BigInt(1));
    }
  }
  // Any certified s below a failed one breaks monotonicity in s.
  for (const auto& a : report.probes) {
    for (const auto& b : report.probes) {
      if (a.certified && !b.certified && a.s < b.s) {
        const std::string note = "s = " + to_string(a.s) +
                                 " certified below failing s = " + to_string(b.s);
        if (std::find(report.non_monotone.begin(), report.non_monotone.end(),
                      note) == report.non_monotone.end()) {
          report.non_monotone.push_back(note);
        }
      }
    }
  }
  return report;
}

ReplayReport replay_published_chain(const PublishedChain& chain,
                                    const RunConfig& config) {
  config.validate();
  const SplitShape shape = SplitShape::make(chain.r, chain.s);
  ReplayReport report;
  report.r = chain.r;
  report.s = chain.s;
  const OptimizerOptions opts = config.optimizer_options();

  auto note_bound = [&](const std::string& what, const BigInt& ours,
                        const BigInt& printed) {
    const bool ok = ours <= printed;
    report.within_published_bounds = report.within_published_bounds && ok;
    report.lines.push_back(what + " = " + to_string(ours) +
                           (ok ? " <= " : " > ") + to_string(printed));
  };

  const HwQuery q0 = initial_query(shape, config.epsilon);
  const HwDerivation d0 = optimize_schedule(q0, opts).derivation;
  note_bound("hw^(" + std::to_string(q0.n) + ")(" + q0.E.to_string() + ")",
             d0.total, chain.initial_bound);
  ChainState state;
  try {
    state.lower_a_rm1 = initial_lower_bound(shape, d0.total);
    for (const auto& st : chain.steps) {
      const HwDerivation d =
          optimize_schedule({chain_level(shape), st.E2}, opts).derivation;
      note_bound("hw^(" + std::to_string(chain_level(shape)) + ")(" +
                     st.E2.to_string() + ")",
                 d.total, st.bound);
      state = chain_step(state, shape, st.E1, st.E2, d);
      if (contradiction_reached(state, shape)) {
        report.contradiction = true;
        report.lines.push_back(std::to_string(shape.r) + " * " +
                               to_string(*state.upper_a_r) + " < " +
                               to_string(shape.s));
        break;
      }
    }
  } catch (const RejectedStep& e) {
    report.lines.push_back(std::string("rejected: ") + e.what());
  }
  return report;
}

}  // namespace smallvalues
