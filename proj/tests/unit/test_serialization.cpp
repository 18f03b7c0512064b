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

#include <string>

#include "doctest.h"
#include "smallvalues/certifier.hpp"
#include "smallvalues/errors.hpp"
#include "smallvalues/serialization.hpp"

using namespace smallvalues;

TEST_CASE("derivations round-trip byte for byte") {
  const HwDerivation d =
      hw_bound({9, parse_decimal("24+1e-13")}, published_nine_schedule());
  const std::string text = derivation_to_json(d);
  CHECK(text.rfind("{\n  \"schema\": \"smallvalues-cert/1\",\n  \"kind\": \"hw-derivation\"", 0) == 0);
  const HwDerivation back = derivation_from_json(text);
  CHECK(back == d);
  CHECK(derivation_to_json(back) == text);
  CHECK(reserialize(text) == text);
}

TEST_CASE("certificates and failures round-trip") {
  const CertifyOutcome ok = certify(SplitShape::make(5, BigInt(1164774)), RunConfig{});
  const std::string text = certificate_to_json(std::get<Certificate>(ok));
  CHECK(certificate_from_json(text) == std::get<Certificate>(ok));
  CHECK(reserialize(text) == text);

  const CertifyOutcome bad = certify(SplitShape::make(3, BigInt(500)), RunConfig{});
  const std::string ftext = failure_to_json(std::get<FailureReport>(bad));
  CHECK(failure_to_json(failure_from_json(ftext)) == ftext);
}

TEST_CASE("configs round-trip") {
  RunConfig c;
  c.epsilon = pow10_inverse(12);
  c.budget = 777;
  c.seed = 42;
  c.granularity = Rational(1, 3);
  c.margin = pow10_inverse(7);
  c.iteration_cap = 9;
  const std::string text = config_to_json(c);
  CHECK(config_from_json(text) == c);
  CHECK(reserialize(text) == text);
  CHECK(config_from_json(config_to_json(RunConfig{})) == RunConfig{});
}

TEST_CASE("partial config files keep defaults") {
  const RunConfig c =
      config_from_json(R"({"schema": "smallvalues-cert/1", "kind": "config", "seed": 3})");
  CHECK(c.seed == 3);
  CHECK(c.budget == RunConfig{}.budget);
}

TEST_CASE("schedules from files and inline lists") {
  CHECK(schedule_from_text("[]").empty());
  CHECK(schedule_from_text("[0.5]").deltas == std::vector<Rational>{Rational(1, 2)});
  CHECK(schedule_from_text("0.5, 0.25").size() == 2);
  CHECK(schedule_from_text(R"(["0.5", "1/3"])").deltas[1] == Rational(1, 3));
  const HwQuery q{3, Rational(5)};
  const DeltaSchedule s{{Rational(1, 2), Rational(1, 4)}};
  const std::string text = schedule_to_json(q, s);
  CHECK(schedule_from_text(text) == s);
  CHECK(schedule_file_from_json(text).query.n == 3);
  CHECK(reserialize(text) == text);
}

TEST_CASE("strict reading") {
  CHECK_THROWS_AS(derivation_from_json("{"), ParseError);
  CHECK_THROWS_AS(derivation_from_json(R"({"schema": "other/1", "kind": "hw-derivation"})"),
                  ParseError);
  CHECK_THROWS_AS(certificate_from_json(R"({"schema": "smallvalues-cert/1", "kind": "config"})"),
                  ParseError);
  const HwDerivation d = hw_bound({2, Rational(47)}, DeltaSchedule{{Rational(1, 2)}});
  std::string text = derivation_to_json(d);
  const auto pos = text.find("\"E\": \"47\"");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 9, "\"E\": 47");
  CHECK_THROWS_AS(derivation_from_json(text), ParseError);
  CHECK_THROWS_AS(schedule_from_text("[0.5, ]"), ParseError);
  CHECK_THROWS_AS(config_from_json(R"({"schema": "smallvalues-cert/1", "kind": "config", "budget": 0})"),
                  ConfigError);
}

TEST_CASE("large integers become strings") {
  HwDerivation d = hw_bound({2, Rational(47)}, DeltaSchedule{{Rational(1, 2)}});
  d.total = parse_integer("100000000000000000000000");
  const std::string text = derivation_to_json(d);
  CHECK(text.find("\"total\": \"100000000000000000000000\"") != std::string::npos);
  CHECK(derivation_from_json(text).total == d.total);
}
