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

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "smallvalues/certifier.hpp"
#include "smallvalues/errors.hpp"
#include "smallvalues/serialization.hpp"

using namespace smallvalues;

namespace {

struct Pair {
  int r;
  long s;
};
constexpr Pair kPairs[] = {{1, 358823708}, {2, 120897257}, {3, 35042291},
                           {4, 8324100},   {5, 1164774},   {6, 77027}};

Certificate certified(int r, long s) {
  const CertifyOutcome out = certify(SplitShape::make(r, BigInt(s)), RunConfig{});
  REQUIRE(std::holds_alternative<Certificate>(out));
  return std::get<Certificate>(out);
}

// Paths to every integer in a JSON tree.
void integer_paths(const nlohmann::ordered_json& j, const nlohmann::ordered_json::json_pointer& at,
                   std::vector<nlohmann::ordered_json::json_pointer>& out) {
  if (j.is_number_integer()) {
    out.push_back(at);
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) integer_paths(v, at / k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) integer_paths(j[i], at / i, out);
  }
}

bool accepted(const std::string& text) {
  try {
    return verify_certificate(certificate_from_json(text)).ok;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

TEST_CASE("all six pairs certify and verify") {
  for (const auto& p : kPairs) {
    CAPTURE(p.r);
    const Certificate c = certified(p.r, p.s);
    CHECK(verify_certificate(c).ok);
    if (p.r == 1) {
      CHECK(c.conclusion.kind == ConclusionKind::kDirect);
      CHECK(c.conclusion.certified_s <= p.s);
    } else {
      CHECK(c.conclusion.kind == ConclusionKind::kContradiction);
      CHECK(c.conclusion.certified_s == p.s);
      CHECK(c.conclusion.r_times_upper < p.s);
    }
  }
}

TEST_CASE("six parts take three chain steps") {
  CHECK(certified(6, 77027).steps.size() == 3);
}

TEST_CASE("the published schedule gives the printed one-part bound") {
  const Certificate c = certify_r1(RunConfig{}, true);
  CHECK(c.conclusion.certified_s == 358823708);
  CHECK(verify_certificate(c).ok);
}

TEST_CASE("equal parts") {
  const RunConfig cfg;
  CHECK(equal_parts_threshold(3, cfg) == 270187);
  CHECK(equal_parts_threshold(9, cfg) == 1);
  CHECK_THROWS_AS(equal_parts_threshold(0, cfg), DomainError);
}

TEST_CASE("no initial traction") {
  const CertifyOutcome out = certify(SplitShape::make(2, BigInt(1000)), RunConfig{});
  REQUIRE(std::holds_alternative<FailureReport>(out));
  const auto& f = std::get<FailureReport>(out);
  CHECK(f.guard == "no initial traction");
  CHECK(f.initial_hw_total.has_value());
}

TEST_CASE("iteration cap is an honest failure") {
  RunConfig cfg;
  cfg.iteration_cap = 1;
  const CertifyOutcome out = certify(SplitShape::make(6, BigInt(77027)), cfg);
  REQUIRE(std::holds_alternative<FailureReport>(out));
  CHECK(std::get<FailureReport>(out).guard == "iteration cap");
}

TEST_CASE("the certifier never returns an unverifiable certificate") {
  std::mt19937_64 rng(11);
  const long lo[] = {0, 0, 100000000, 30000000, 7000000, 1000000, 60000};
  const long hi[] = {0, 0, 140000000, 40000000, 9000000, 1300000, 90000};
  RunConfig cfg;
  cfg.budget = 5000;
  for (int r = 2; r <= 6; ++r) {
    std::uniform_int_distribution<long> s(lo[r], hi[r]);
    for (int i = 0; i < 6; ++i) {
      const long sv = s(rng);
      CAPTURE(r);
      CAPTURE(sv);
      const CertifyOutcome out = certify(SplitShape::make(r, BigInt(sv)), cfg);
      if (const auto* c = std::get_if<Certificate>(&out)) {
        CHECK(verify_certificate(*c).ok);
        CHECK(r * c->conclusion.upper_a_r < sv);
      } else {
        CHECK_FALSE(std::get<FailureReport>(out).guard.empty());
      }
    }
  }
}

TEST_CASE("tampering with any recorded integer is detected") {
  for (const auto& p : kPairs) {
    CAPTURE(p.r);
    const std::string text = certificate_to_json(certified(p.r, p.s));
    REQUIRE(accepted(text));
    const auto j = nlohmann::ordered_json::parse(text);
    std::vector<nlohmann::ordered_json::json_pointer> paths;
    integer_paths(j, nlohmann::ordered_json::json_pointer(), paths);
    CHECK(paths.size() > 10);
    for (const auto& path : paths) {
      for (int delta : {1, -1}) {
        auto t = j;
        t[path] = t[path].get<std::int64_t>() + delta;
        CAPTURE(path.to_string());
        CHECK_FALSE(accepted(t.dump(2) + "\n"));
      }
    }
  }
}

TEST_CASE("tampering with recorded rationals is detected") {
  const Certificate good = certified(4, 8324100);
  Certificate c = good;
  c.steps[1].E2 += pow10_inverse(9);
  CHECK_FALSE(verify_certificate(c).ok);
  c = good;
  c.steps[0].lower_a_rm1 += Rational(1);
  CHECK_FALSE(verify_certificate(c).ok);
  c = good;
  c.initial.derivation.schedule.deltas[0] = Rational(1, 2);
  const VerifyResult v = verify_certificate(c);
  CHECK_FALSE(v.ok);
  CHECK_FALSE(v.failed.empty());
  c = good;
  c.steps.pop_back();
  CHECK_FALSE(verify_certificate(c).ok);
}

TEST_CASE("chain step guards") {
  const SplitShape shape = SplitShape::make(6, BigInt(77027));
  ChainState st;
  st.lower_a_rm1 = Rational(1000);
  const HwDerivation d = hw_bound({2, Rational(47)}, DeltaSchedule{{max_search_delta()}});
  CHECK_THROWS_AS(chain_step(st, shape, parse_decimal("11.52"), Rational(47), d),
                  RejectedStep);
  st.lower_a_rm1 = Rational(9876, 2);
  try {
    chain_step(st, shape, parse_decimal("11.52"), Rational(20), d);
    FAIL("expected a rejection");
  } catch (const RejectedStep& e) {
    CHECK(e.guard() == "H1 > 0 and H1*H2 > 8-r");
  }
  try {
    chain_step(st, shape, parse_decimal("11.52"), Rational(48), d);
    FAIL("expected a rejection");
  } catch (const RejectedStep& e) {
    CHECK(e.guard() == "hw level/exponent");
  }
  const ChainState next = chain_step(st, shape, parse_decimal("11.52"), Rational(47), d);
  CHECK(next.upper_a_r == 66301);
  CHECK(next.lower_a_rm1 == Rational(77027 - 66301, 5));
  try {
    chain_step(next, shape, parse_decimal("11.52"), Rational(47), d);
    FAIL("expected a rejection");
  } catch (const RejectedStep& e) {
    CHECK(e.guard() == "progress");
  }
}

TEST_CASE("published chains replay to a contradiction") {
  PublishedChain six{6, BigInt(77027), BigInt(67151), {}};
  six.steps = {{parse_decimal("11.52"), Rational(47), BigInt(66301)},
               {Rational(12), parse_decimal("42+1e-13"), BigInt(50761)},
               {parse_decimal("17.76"), parse_decimal("21.56"), BigInt(8621)}};
  const ReplayReport rep = replay_published_chain(six, RunConfig{});
  CHECK(rep.contradiction);
  CHECK(rep.within_published_bounds);
}

TEST_CASE("downward search reports every probe") {
  RunConfig cfg;
  cfg.budget = 5000;
  const SearchReport rep = find_min_certifiable_s(6, BigInt(77027), cfg, 12);
  REQUIRE(rep.s_min.has_value());
  CHECK(*rep.s_min <= 77027);
  CHECK(rep.probes.size() <= 12);
  CHECK(rep.probes.front().certified);
}

TEST_CASE("initial lower bound examples") {
  CHECK(initial_lower_bound(SplitShape::make(6, BigInt(77027)), BigInt(67151)) ==
        Rational(9876, 5));
  CHECK(ceil(Rational(9876, 5)) == 1976);
  CHECK(initial_lower_bound(SplitShape::make(2, BigInt(120897257)), BigInt(120893893)) ==
        Rational(3364));
  CHECK_THROWS_AS(initial_lower_bound(SplitShape::make(2, BigInt(100)), BigInt(100)),
                  RejectedStep);
}

TEST_CASE("chain step arithmetic with printed bounds") {
  const SplitShape two = SplitShape::make(2, BigInt(120897257));
  ChainState st;
  st.lower_a_rm1 = Rational(3364);
  HwDerivation printed;
  printed.query = {7, parse_decimal("28.77")};
  printed.total = 120847458;
  const ChainState next = chain_step(st, two, parse_decimal("14.6992"),
                                     parse_decimal("28.77"), printed);
  CHECK(next.lower_a_rm1 == Rational(49799));

  const SplitShape six = SplitShape::make(6, BigInt(77027));
  ChainState s6;
  s6.lower_a_rm1 = Rational(77027 - 66301, 5);
  s6.upper_a_r = BigInt(66301);
  const HwDerivation d = hw_bound({2, parse_decimal("42+1e-13")},
                                  DeltaSchedule{{default_hw2_delta()}});
  CHECK(d.total == 50761);
  const ChainState n6 = chain_step(s6, six, Rational(12), parse_decimal("42+1e-13"), d);
  CHECK(ceil(n6.lower_a_rm1) == 5254);
}

TEST_CASE("contradiction boundary") {
  ChainState st;
  st.upper_a_r = BigInt(3);
  CHECK_FALSE(contradiction_reached(st, SplitShape::make(3, BigInt(9))));
  st.upper_a_r = BigInt(8621);
  CHECK(contradiction_reached(st, SplitShape::make(6, BigInt(77027))));
  st.upper_a_r = BigInt(54000000);
  CHECK(contradiction_reached(st, SplitShape::make(2, BigInt(120897257))));
}

TEST_CASE("hand tampering named in the verifier report") {
  const Certificate good = certified(6, 77027);
  Certificate c = good;
  c.steps.back().upper_a_r -= 1;
  CHECK_FALSE(verify_certificate(c).ok);
  c = good;
  c.steps[0].hw_at_E2.schedule.deltas[0] = Rational(1);
  const VerifyResult v = verify_certificate(c);
  CHECK_FALSE(v.ok);
  bool named = false;
  for (const auto& f : v.failed) named = named || f.find("steps[0].hw_at_E2") == 0;
  CHECK(named);
}

TEST_CASE("search below any certifiable point finds nothing") {
  const SearchReport rep = find_min_certifiable_s(6, BigInt(1000), RunConfig{});
  CHECK_FALSE(rep.s_min.has_value());
  REQUIRE(rep.probes.size() == 1);
  CHECK_FALSE(rep.probes[0].certified);
}

TEST_CASE("all published chains replay") {
  std::ifstream in(std::string(SMALLVALUES_DATA_DIR) + "/published_chains.json");
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto chains = published_chains_from_json(ss.str());
  REQUIRE(chains.size() == 5);
  for (const auto& chain : chains) {
    CAPTURE(chain.r);
    const ReplayReport rep = replay_published_chain(chain, RunConfig{});
    CHECK(rep.contradiction);
    CHECK(rep.within_published_bounds);
  }
}
