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

#include "smallvalues/serialization.hpp"

#include <string>

#include "json.hpp"
#include "smallvalues/errors.hpp"

namespace smallvalues {
namespace {

using Json = nlohmann::ordered_json;

Json integer(const BigInt& v) {
  if (fits_int64(v)) return to_int64(v);
  return to_string(v);
}

Json header(std::string_view kind) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

BigInt read_integer(const Json& j, const char* what) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? BigInt(std::to_string(j.get<std::uint64_t>()))
                                  : BigInt(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw ParseError(std::string("field \"") + what + "\" must be an integer");
}

int read_int(const Json& j, const char* what) {
  const BigInt v = read_integer(j, what);
  if (v < -(1L << 30) || v > (1L << 30)) {
    throw ParseError(std::string("field \"") + what + "\" out of range");
  }
  return static_cast<int>(v.get_si());
}

Rational read_rational(const Json& j, const char* what) {
  if (!j.is_string()) {
    throw ParseError(std::string("field \"") + what +
                     "\" must be a rational string");
  }
  return parse_rational(j.get<std::string>());
}

void expect_header(const Json& j, std::string_view kind) {
  const Json& schema = member(j, "schema");
  if (!schema.is_string() || schema.get<std::string>() != kSchemaVersion) {
    throw ParseError("unsupported schema, expected " + std::string(kSchemaVersion));
  }
  const Json& k = member(j, "kind");
  if (!k.is_string() || k.get<std::string>() != kind) {
    throw ParseError("expected a \"" + std::string(kind) + "\" file");
  }
}

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

std::vector<Rational> read_rationals(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("field \"") + what + "\" must be a list");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(read_rational(x, what));
  return out;
}

Json derivation_body(const HwDerivation& d) {
  Json j;
  j["query"] = {{"n", d.query.n}, {"E", d.query.E.to_string()}};
  j["schedule"] = rationals(d.schedule.deltas);
  Json levels = Json::array();
  for (const HwLevel& lv : d.levels) {
    Json l;
    l["level"] = lv.level;
    l["E"] = lv.E.to_string();
    l["s"] = integer(lv.s);
    l["cost"] = integer(lv.cost);
    l["E_next"] = lv.E_next.to_string();
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  j["total"] = integer(d.total);
  return j;
}

HwDerivation read_derivation(const Json& j) {
  HwDerivation d;
  const Json& q = member(j, "query");
  d.query.n = read_int(member(q, "n"), "n");
  d.query.E = read_rational(member(q, "E"), "E");
  d.schedule.deltas = read_rationals(member(j, "schedule"), "schedule");
  const Json& levels = member(j, "levels");
  if (!levels.is_array()) throw ParseError("field \"levels\" must be a list");
  for (const Json& l : levels) {
    HwLevel lv;
    lv.level = read_int(member(l, "level"), "level");
    lv.E = read_rational(member(l, "E"), "E");
    lv.s = read_integer(member(l, "s"), "s");
    lv.cost = read_integer(member(l, "cost"), "cost");
    lv.E_next = read_rational(member(l, "E_next"), "E_next");
    d.levels.push_back(std::move(lv));
  }
  d.total = read_integer(member(j, "total"), "total");
  return d;
}

Json shape_json(const SplitShape& s) {
  return {{"r", s.r}, {"s", integer(s.s)}, {"family", to_string(s.family)}};
}

SplitShape read_shape(const Json& j) {
  SplitShape s;
  s.r = read_int(member(j, "r"), "r");
  s.s = read_integer(member(j, "s"), "s");
  const Json& f = member(j, "family");
  if (!f.is_string()) throw ParseError("field \"family\" must be a string");
  s.family = parse_family(f.get<std::string>());
  return s;
}

Json state_json(const ChainState& st) {
  Json j;
  j["step_index"] = st.step_index;
  j["lower_a_rm1"] = st.lower_a_rm1.to_string();
  if (st.upper_a_r) j["upper_a_r"] = integer(*st.upper_a_r);
  return j;
}

}  // namespace

std::string derivation_to_json(const HwDerivation& d) {
  Json j = header("hw-derivation");
  j.update(derivation_body(d));
  return dump(j);
}

HwDerivation derivation_from_json(std::string_view text) {
  const Json j = parse_json(text);
  expect_header(j, "hw-derivation");
  return read_derivation(j);
}

std::string certificate_to_json(const Certificate& cert) {
  Json j = header("certificate");
  j["shape"] = shape_json(cert.shape);
  j["epsilon"] = cert.epsilon.to_string();
  Json initial;
  initial["derivation"] = derivation_body(cert.initial.derivation);
  if (cert.shape.r > 1) initial["lower_a_rm1"] = cert.initial.lower_a_rm1.to_string();
  j["initial"] = std::move(initial);
  Json steps = Json::array();
  for (const ChainStepRecord& st : cert.steps) {
    Json s;
    s["index"] = st.index;
    s["guard_lower"] = integer(st.guard_lower);
    s["E1"] = st.E1.to_string();
    s["hw2_at_E1"] = derivation_body(st.hw2_at_E1);
    s["E2"] = st.E2.to_string();
    s["hw_at_E2"] = derivation_body(st.hw_at_E2);
    s["upper_a_r"] = integer(st.upper_a_r);
    s["lower_a_rm1"] = st.lower_a_rm1.to_string();
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  Json c;
  if (cert.conclusion.kind == ConclusionKind::kDirect) {
    c["kind"] = "direct";
    c["hw_total"] = integer(cert.conclusion.hw_total);
  } else {
    c["kind"] = "contradiction";
    c["upper_a_r"] = integer(cert.conclusion.upper_a_r);
    c["r_times_upper"] = integer(cert.conclusion.r_times_upper);
  }
  c["certified_s"] = integer(cert.conclusion.certified_s);
  j["conclusion"] = std::move(c);
  return dump(j);
}

Certificate certificate_from_json(std::string_view text) {
  const Json j = parse_json(text);
  expect_header(j, "certificate");
  Certificate cert;
  cert.shape = read_shape(member(j, "shape"));
  cert.epsilon = read_rational(member(j, "epsilon"), "epsilon");
  const Json& initial = member(j, "initial");
  cert.initial.derivation = read_derivation(member(initial, "derivation"));
  if (cert.shape.r > 1) {
    cert.initial.lower_a_rm1 =
        read_rational(member(initial, "lower_a_rm1"), "lower_a_rm1");
  }
  const Json& steps = member(j, "steps");
  if (!steps.is_array()) throw ParseError("field \"steps\" must be a list");
  for (const Json& s : steps) {
    ChainStepRecord st;
    st.index = read_int(member(s, "index"), "index");
    st.guard_lower = read_integer(member(s, "guard_lower"), "guard_lower");
    st.E1 = read_rational(member(s, "E1"), "E1");
    st.hw2_at_E1 = read_derivation(member(s, "hw2_at_E1"));
    st.E2 = read_rational(member(s, "E2"), "E2");
    st.hw_at_E2 = read_derivation(member(s, "hw_at_E2"));
    st.upper_a_r = read_integer(member(s, "upper_a_r"), "upper_a_r");
    st.lower_a_rm1 = read_rational(member(s, "lower_a_rm1"), "lower_a_rm1");
    cert.steps.push_back(std::move(st));
  }
  const Json& c = member(j, "conclusion");
  const Json& kind = member(c, "kind");
  if (kind == "direct") {
    cert.conclusion.kind = ConclusionKind::kDirect;
    cert.conclusion.hw_total = read_integer(member(c, "hw_total"), "hw_total");
  } else if (kind == "contradiction") {
    cert.conclusion.kind = ConclusionKind::kContradiction;
    cert.conclusion.upper_a_r = read_integer(member(c, "upper_a_r"), "upper_a_r");
    cert.conclusion.r_times_upper =
        read_integer(member(c, "r_times_upper"), "r_times_upper");
  } else {
    throw ParseError("unknown conclusion kind");
  }
  cert.conclusion.certified_s = read_integer(member(c, "certified_s"), "certified_s");
  return cert;
}

std::string failure_to_json(const FailureReport& report) {
  Json j = header("failure");
  j["shape"] = shape_json(report.shape);
  j["guard"] = report.guard;
  j["message"] = report.message;
  if (report.initial_hw_total) j["initial_hw_total"] = integer(*report.initial_hw_total);
  j["last_state"] = state_json(report.last_state);
  return dump(j);
}

FailureReport failure_from_json(std::string_view text) {
  const Json j = parse_json(text);
  expect_header(j, "failure");
  FailureReport f;
  f.shape = read_shape(member(j, "shape"));
  const Json& guard = member(j, "guard");
  const Json& message = member(j, "message");
  if (!guard.is_string() || !message.is_string()) {
    throw ParseError("guard and message must be strings");
  }
  f.guard = guard.get<std::string>();
  f.message = message.get<std::string>();
  if (j.contains("initial_hw_total")) {
    f.initial_hw_total = read_integer(j["initial_hw_total"], "initial_hw_total");
  }
  const Json& st = member(j, "last_state");
  f.last_state.step_index = read_int(member(st, "step_index"), "step_index");
  f.last_state.lower_a_rm1 = read_rational(member(st, "lower_a_rm1"), "lower_a_rm1");
  if (st.contains("upper_a_r")) {
    f.last_state.upper_a_r = read_integer(st["upper_a_r"], "upper_a_r");
  }
  return f;
}

std::string config_to_json(const RunConfig& c) {
  Json j = header("config");
  j["epsilon"] = c.epsilon.to_string();
  j["budget"] = c.budget;
  j["seed"] = c.seed;
  j["granularity"] = c.granularity.to_string();
  j["margin"] = c.margin.to_string();
  j["iteration_cap"] = c.iteration_cap;
  return dump(j);
}

RunConfig config_from_json(std::string_view text) {
  const Json j = parse_json(text);
  expect_header(j, "config");
  RunConfig c;
  if (j.contains("epsilon")) c.epsilon = read_rational(j["epsilon"], "epsilon");
  if (j.contains("budget")) c.budget = read_integer(j["budget"], "budget").get_si();
  if (j.contains("seed")) {
    const BigInt seed = read_integer(j["seed"], "seed");
    if (seed < 0) throw ParseError("field \"seed\" must be non-negative");
    c.seed = std::stoull(seed.get_str());
  }
  if (j.contains("granularity")) {
    c.granularity = read_rational(j["granularity"], "granularity");
  }
  if (j.contains("margin")) c.margin = read_rational(j["margin"], "margin");
  if (j.contains("iteration_cap")) {
    c.iteration_cap = read_int(j["iteration_cap"], "iteration_cap");
  }
  c.validate();
  return c;
}

std::string schedule_to_json(const HwQuery& query, const DeltaSchedule& s) {
  Json j = header("schedule");
  j["n"] = query.n;
  j["E"] = query.E.to_string();
  j["deltas"] = rationals(s.deltas);
  return dump(j);
}

ScheduleFile schedule_file_from_json(std::string_view text) {
  const Json j = parse_json(text);
  expect_header(j, "schedule");
  ScheduleFile f;
  f.query.n = read_int(member(j, "n"), "n");
  f.query.E = read_rational(member(j, "E"), "E");
  f.schedule.deltas = read_rationals(member(j, "deltas"), "deltas");
  return f;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  auto trim = [](std::string_view v) {
    const auto b = v.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return std::string_view{};
    const auto e = v.find_last_not_of(" \t\r\n");
    return v.substr(b, e - b + 1);
  };
  std::string_view body = trim(text);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw ParseError("unterminated list", body.size());
    body = trim(body.substr(1, body.size() - 2));
  }
  std::vector<Rational> out;
  if (body.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    std::string_view item = trim(body.substr(start, comma - start));
    if (item.size() >= 2 && item.front() == '"' && item.back() == '"') {
      item = item.substr(1, item.size() - 2);
    }
    if (item.empty()) throw ParseError("empty list element", start);
    out.push_back(parse_rational(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

DeltaSchedule schedule_from_text(std::string_view text) {
  const auto b = text.find_first_not_of(" \t\r\n");
  if (b != std::string_view::npos && text[b] == '{') {
    const Json j = parse_json(text);
    const Json& s = j.contains("deltas") ? j.at("deltas") : member(j, "schedule");
    return DeltaSchedule{read_rationals(s, "deltas")};
  }
  return DeltaSchedule{parse_rational_list(text)};
}

std::string search_report_to_json(const SearchReport& report) {
  Json j = header("search-report");
  j["r"] = report.r;
  j["start"] = integer(report.start);
  if (report.s_min) {
    j["s_min"] = integer(*report.s_min);
  } else {
    j["s_min"] = nullptr;
  }
  Json probes = Json::array();
  for (const auto& p : report.probes) {
    probes.push_back(
        {{"s", integer(p.s)}, {"certified", p.certified}, {"detail", p.detail}});
  }
  j["probes"] = std::move(probes);
  j["non_monotone"] = report.non_monotone;
  return dump(j);
}

std::string replay_report_to_json(const std::vector<ReplayReport>& reports) {
  Json j = header("replay-report");
  Json list = Json::array();
  for (const auto& r : reports) {
    list.push_back({{"r", r.r},
                    {"s", integer(r.s)},
                    {"contradiction", r.contradiction},
                    {"within_published_bounds", r.within_published_bounds},
                    {"lines", r.lines}});
  }
  j["chains"] = std::move(list);
  return dump(j);
}

std::vector<PublishedChain> published_chains_from_json(std::string_view text) {
  const Json j = parse_json(text);
  expect_header(j, "published-chains");
  std::vector<PublishedChain> out;
  for (const Json& c : member(j, "chains")) {
    PublishedChain pc;
    pc.r = read_int(member(c, "r"), "r");
    pc.s = read_integer(member(c, "s"), "s");
    pc.initial_bound = read_integer(member(c, "initial_bound"), "initial_bound");
    for (const Json& st : member(c, "steps")) {
      pc.steps.push_back({read_rational(member(st, "E1"), "E1"),
                          read_rational(member(st, "E2"), "E2"),
                          read_integer(member(st, "bound"), "bound")});
    }
    out.push_back(std::move(pc));
  }
  return out;
}

std::string reserialize(std::string_view text) {
  const Json j = parse_json(text);
  const Json& kind = member(j, "kind");
  if (!kind.is_string()) throw ParseError("field \"kind\" must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "hw-derivation") return derivation_to_json(derivation_from_json(text));
  if (k == "certificate") return certificate_to_json(certificate_from_json(text));
  if (k == "failure") return failure_to_json(failure_from_json(text));
  if (k == "config") return config_to_json(config_from_json(text));
  if (k == "schedule") {
    const ScheduleFile f = schedule_file_from_json(text);
    return schedule_to_json(f.query, f.schedule);
  }
  if (k == "search-report" || k == "replay-report" || k == "published-chains") {
    expect_header(j, k);
    return dump(j);
  }
  throw ParseError("unknown file kind \"" + k + "\"");
}

}  // namespace smallvalues
