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

#ifndef SMALLVALUES_SERIALIZATION_HPP_
#define SMALLVALUES_SERIALIZATION_HPP_

// File formats. Every file is a JSON object whose first two members are
// "schema": "smallvalues-cert/1" and "kind". Rationals are always strings in
// the serialization grammar of parse_rational; integers are JSON numbers
// (strings of digits beyond the int64 range). Output is canonical, so
// reading a file and writing it back reproduces it byte for byte.

#include <string>
#include <string_view>
#include <vector>

#include "smallvalues/certifier.hpp"
#include "smallvalues/config.hpp"
#include "smallvalues/hw.hpp"

namespace smallvalues {

inline constexpr std::string_view kSchemaVersion = "smallvalues-cert/1";

std::string derivation_to_json(const HwDerivation& d);
HwDerivation derivation_from_json(std::string_view text);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(std::string_view text);

std::string failure_to_json(const FailureReport& report);
FailureReport failure_from_json(std::string_view text);

std::string config_to_json(const RunConfig& config);
RunConfig config_from_json(std::string_view text);

// {"schema", "kind": "schedule", "n", "E", "deltas": [...]}
std::string schedule_to_json(const HwQuery& query, const DeltaSchedule& s);

struct ScheduleFile {
  HwQuery query;
  DeltaSchedule schedule;
};
ScheduleFile schedule_file_from_json(std::string_view text);

// Accepts an inline list ("[0.5, 0.25]", "[]", "0.5,0.25"), a JSON array of
// rational strings, or any file object carrying "deltas" or "schedule".
DeltaSchedule schedule_from_text(std::string_view text);

// "1,2.5,-3" or "[1, 2.5]" (elements optionally quoted).
std::vector<Rational> parse_rational_list(std::string_view text);

std::string search_report_to_json(const SearchReport& report);
std::string replay_report_to_json(const std::vector<ReplayReport>& reports);

// {"schema", "kind": "published-chains", "chains": [{"r", "s",
// "initial_bound", "steps": [{"E1", "E2", "bound"}]}]}
std::vector<PublishedChain> published_chains_from_json(std::string_view text);

// Reads any file written by this library and writes it back canonically.
std::string reserialize(std::string_view text);

}  // namespace smallvalues

#endif  // SMALLVALUES_SERIALIZATION_HPP_
