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

#include <cstring>
#include <string>

#include "doctest.h"
#include "smallvalues/smallvalues.h"

namespace {

struct Ctx {
  sv_context* p = sv_context_new();
  ~Ctx() { sv_context_free(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  sv_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("hw through the C interface") {
  Ctx ctx;
  sv_derivation* d = nullptr;
  REQUIRE(sv_hw_bound(ctx.p, 2, "42", "[0.5]", &d) == SV_OK);
  char* total = nullptr;
  REQUIRE(sv_derivation_total(ctx.p, d, &total) == SV_OK);
  CHECK(take(total) == "97290");
  char* json = nullptr;
  REQUIRE(sv_derivation_to_json(ctx.p, d, &json) == SV_OK);
  const std::string text = take(json);
  sv_derivation* back = nullptr;
  REQUIRE(sv_derivation_from_json(ctx.p, text.c_str(), &back) == SV_OK);
  REQUIRE(sv_derivation_to_json(ctx.p, back, &json) == SV_OK);
  CHECK(take(json) == text);
  sv_derivation_free(back);
  sv_derivation_free(d);
}

TEST_CASE("status codes") {
  Ctx ctx;
  sv_derivation* d = nullptr;
  CHECK(sv_hw_bound(ctx.p, 2, "4x", "[0.5]", &d) == SV_ERR_PARSE);
  CHECK(std::strlen(sv_last_error(ctx.p)) > 0);
  CHECK(sv_hw_bound(ctx.p, 2, "42", "[0.5, 0.5]", &d) == SV_ERR_CONFIG);
  CHECK(sv_hw_bound(ctx.p, 2, "42", "[1.5]", &d) == SV_ERR_DOMAIN);
  CHECK(sv_hw_bound(ctx.p, 2, nullptr, "[0.5]", &d) == SV_ERR_ARGUMENT);
  CHECK(sv_hw_bound(nullptr, 2, "42", "[0.5]", &d) == SV_ERR_ARGUMENT);
  CHECK(sv_config_set(ctx.p, "budget", "0") == SV_ERR_CONFIG);
  CHECK(sv_config_set(ctx.p, "colour", "1") == SV_ERR_CONFIG);
  CHECK(std::string(sv_status_name(SV_NEGATIVE)) == "negative");
}

TEST_CASE("config round trip") {
  Ctx ctx;
  REQUIRE(sv_config_set(ctx.p, "seed", "9") == SV_OK);
  REQUIRE(sv_config_set(ctx.p, "margin", "1e-7") == SV_ERR_PARSE);
  REQUIRE(sv_config_set(ctx.p, "margin", "0.0000001") == SV_OK);
  char* json = nullptr;
  REQUIRE(sv_config_to_json(ctx.p, &json) == SV_OK);
  const std::string text = take(json);
  Ctx other;
  REQUIRE(sv_config_load_json(other.p, text.c_str()) == SV_OK);
  REQUIRE(sv_config_to_json(other.p, &json) == SV_OK);
  CHECK(take(json) == text);
}

TEST_CASE("certify, verify and honest failure") {
  Ctx ctx;
  sv_certificate* cert = nullptr;
  char* failure = nullptr;
  REQUIRE(sv_certify(ctx.p, 6, "77027", &cert, &failure) == SV_OK);
  CHECK(failure == nullptr);
  char* report = nullptr;
  CHECK(sv_verify(ctx.p, cert, &report) == SV_OK);
  CHECK(take(report).empty());
  char* summary = nullptr;
  REQUIRE(sv_certificate_summary(ctx.p, cert, &summary) == SV_OK);
  CHECK(take(summary) == "6 77027 77027 3 contradiction");
  sv_certificate_free(cert);

  cert = nullptr;
  CHECK(sv_certify(ctx.p, 2, "1000", &cert, &failure) == SV_NEGATIVE);
  CHECK(cert == nullptr);
  CHECK(take(failure).find("no initial traction") != std::string::npos);
  CHECK(sv_certify(ctx.p, 7, "1000", &cert, &failure) == SV_ERR_DOMAIN);
}

TEST_CASE("progress callback") {
  Ctx ctx;
  int lines = 0;
  sv_set_progress(
      ctx.p, [](const char*, void* user) { ++*static_cast<int*>(user); }, &lines);
  sv_derivation* d = nullptr;
  REQUIRE(sv_optimize(ctx.p, 3, "24+1e-13", nullptr, &d) == SV_OK);
  char* total = nullptr;
  REQUIRE(sv_derivation_total(ctx.p, d, &total) == SV_OK);
  CHECK(take(total) == "270186");
  sv_derivation_free(d);
  CHECK(lines > 0);
}

TEST_CASE("lab entry points") {
  Ctx ctx;
  char* report = nullptr;
  CHECK(sv_lab_trick(ctx.p, 1, 4, 6, 10, &report) == SV_OK);
  CHECK(take(report).find("10/10 exact") != std::string::npos);
  CHECK(sv_lab_additive(ctx.p, "1,1,1,1,1,1,1,1,1", "1", 2, 0, 1, nullptr, &report) == SV_OK);
  CHECK(take(report).find("1/1 witnesses verified") != std::string::npos);
  CHECK(sv_lab_additive(ctx.p, "1,1,1", "1", 2, 0, 1, nullptr, &report) == SV_ERR_DOMAIN);
}
