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

#include "smallvalues/smallvalues.h"

#include <cstdlib>
#include <cstring>
#include <random>
#include <sstream>
#include <string>

#include "smallvalues/additive.hpp"
#include "smallvalues/certifier.hpp"
#include "smallvalues/config.hpp"
#include "smallvalues/errors.hpp"
#include "smallvalues/forms.hpp"
#include "smallvalues/hw.hpp"
#include "smallvalues/schedule.hpp"
#include "smallvalues/serialization.hpp"

using namespace smallvalues;

struct sv_context {
  RunConfig config;
  std::string error;
  sv_progress_fn progress = nullptr;
  void* progress_user = nullptr;

  OptimizerOptions options() const {
    OptimizerOptions o = config.optimizer_options();
    if (progress) {
      o.progress = [fn = progress, user = progress_user](const std::string& line) {
        fn(line.c_str(), user);
      };
    }
    return o;
  }
};

struct sv_derivation {
  HwDerivation derivation;
};

struct sv_certificate {
  Certificate certificate;
};

namespace {

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
sv_status guarded(sv_context* ctx, F&& body) {
  if (!ctx) return SV_ERR_ARGUMENT;
  ctx->error.clear();
  try {
    return body();
  } catch (const ParseError& e) {
    ctx->error = e.what();
    return SV_ERR_PARSE;
  } catch (const ConfigError& e) {
    ctx->error = e.what();
    return SV_ERR_CONFIG;
  } catch (const InfeasibleError& e) {
    ctx->error = e.what();
    return SV_ERR_INFEASIBLE;
  } catch (const DomainError& e) {
    ctx->error = e.what();
    return SV_ERR_DOMAIN;
  } catch (const std::bad_alloc&) {
    ctx->error = "out of memory";
    return SV_ERR_INTERNAL;
  } catch (const std::exception& e) {
    ctx->error = e.what();
    return SV_ERR_INTERNAL;
  }
}

sv_status argument(sv_context* ctx, const char* what) {
  ctx->error = std::string("missing argument: ") + what;
  return SV_ERR_ARGUMENT;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace

extern "C" {

const char* sv_version(void) { return "0.1.0"; }

const char* sv_status_name(sv_status status) {
  switch (status) {
    case SV_OK: return "ok";
    case SV_NEGATIVE: return "negative";
    case SV_ERR_PARSE: return "parse error";
    case SV_ERR_DOMAIN: return "domain error";
    case SV_ERR_CONFIG: return "config error";
    case SV_ERR_INFEASIBLE: return "infeasible";
    case SV_ERR_IO: return "io error";
    case SV_ERR_ARGUMENT: return "invalid argument";
    case SV_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

void sv_string_free(char* s) { std::free(s); }

sv_context* sv_context_new(void) {
  try {
    return new sv_context();
  } catch (...) {
    return nullptr;
  }
}

void sv_context_free(sv_context* ctx) { delete ctx; }

const char* sv_last_error(const sv_context* ctx) {
  return ctx ? ctx->error.c_str() : "null context";
}

void sv_set_progress(sv_context* ctx, sv_progress_fn fn, void* user) {
  if (!ctx) return;
  ctx->progress = fn;
  ctx->progress_user = user;
}

sv_status sv_set_threads(sv_context* ctx, unsigned threads) {
  return guarded(ctx, [&] {
    ctx->config.threads = threads;
    return SV_OK;
  });
}

sv_status sv_config_set(sv_context* ctx, const char* key, const char* value) {
  return guarded(ctx, [&] {
    if (!key) return argument(ctx, "key");
    if (!value) return argument(ctx, "value");
    RunConfig c = ctx->config;
    const std::string k = key;
    if (k == "epsilon") {
      c.epsilon = parse_rational(value);
    } else if (k == "granularity") {
      c.granularity = parse_rational(value);
    } else if (k == "margin") {
      c.margin = parse_rational(value);
    } else if (k == "budget" || k == "seed" || k == "iteration_cap") {
      const BigInt v = parse_integer(value);
      if (v < 0 || !fits_int64(v)) throw ConfigError(k + " out of range");
      if (k == "budget") c.budget = to_int64(v);
      if (k == "seed") c.seed = static_cast<std::uint64_t>(to_int64(v));
      if (k == "iteration_cap") {
        if (v > 1000000) throw ConfigError("iteration_cap out of range");
        c.iteration_cap = static_cast<int>(to_int64(v));
      }
    } else {
      throw ConfigError("unknown config key \"" + k + "\"");
    }
    c.validate();
    ctx->config = c;
    return SV_OK;
  });
}

sv_status sv_config_load_json(sv_context* ctx, const char* json) {
  return guarded(ctx, [&] {
    if (!json) return argument(ctx, "json");
    RunConfig c = config_from_json(json);
    c.threads = ctx->config.threads;
    ctx->config = c;
    return SV_OK;
  });
}

sv_status sv_config_to_json(sv_context* ctx, char** out) {
  return guarded(ctx, [&] {
    if (!out) return argument(ctx, "out");
    *out = dup(config_to_json(ctx->config));
    return SV_OK;
  });
}

sv_status sv_parse_schedule(sv_context* ctx, const char* text, char** out) {
  return guarded(ctx, [&] {
    if (!text) return argument(ctx, "text");
    if (!out) return argument(ctx, "out");
    const DeltaSchedule s = schedule_from_text(text);
    std::string json = "[";
    for (std::size_t i = 0; i < s.deltas.size(); ++i) {
      json += (i ? ", \"" : "\"") + s.deltas[i].to_string() + "\"";
    }
    *out = dup(json + "]");
    return SV_OK;
  });
}

sv_status sv_reserialize(sv_context* ctx, const char* text, char** out) {
  return guarded(ctx, [&] {
    if (!text) return argument(ctx, "text");
    if (!out) return argument(ctx, "out");
    *out = dup(reserialize(text));
    return SV_OK;
  });
}

sv_status sv_hw_bound(sv_context* ctx, int n, const char* E, const char* schedule_text,
                      sv_derivation** out) {
  return guarded(ctx, [&] {
    if (!E) return argument(ctx, "E");
    if (!schedule_text) return argument(ctx, "schedule");
    if (!out) return argument(ctx, "out");
    const HwQuery q{n, parse_rational(E)};
    const DeltaSchedule s = schedule_from_text(schedule_text);
    *out = new sv_derivation{hw_bound(q, s)};
    return SV_OK;
  });
}

sv_status sv_optimize(sv_context* ctx, int n, const char* E, const char* warm_text,
                      sv_derivation** out) {
  return guarded(ctx, [&] {
    if (!E) return argument(ctx, "E");
    if (!out) return argument(ctx, "out");
    const HwQuery q{n, parse_rational(E)};
    OptimizerOptions o = ctx->options();
    if (warm_text) o.warm_start = schedule_from_text(warm_text);
    *out = new sv_derivation{optimize_schedule(q, o).derivation};
    return SV_OK;
  });
}

sv_status sv_derivation_from_json(sv_context* ctx, const char* json, sv_derivation** out) {
  return guarded(ctx, [&] {
    if (!json) return argument(ctx, "json");
    if (!out) return argument(ctx, "out");
    *out = new sv_derivation{derivation_from_json(json)};
    return SV_OK;
  });
}

void sv_derivation_free(sv_derivation* d) { delete d; }

sv_status sv_derivation_total(sv_context* ctx, const sv_derivation* d, char** out) {
  return guarded(ctx, [&] {
    if (!d) return argument(ctx, "derivation");
    if (!out) return argument(ctx, "out");
    *out = dup(to_string(d->derivation.total));
    return SV_OK;
  });
}

sv_status sv_derivation_to_json(sv_context* ctx, const sv_derivation* d, char** out) {
  return guarded(ctx, [&] {
    if (!d) return argument(ctx, "derivation");
    if (!out) return argument(ctx, "out");
    *out = dup(derivation_to_json(d->derivation));
    return SV_OK;
  });
}

sv_status sv_derivation_schedule_json(sv_context* ctx, const sv_derivation* d,
                                      char** out) {
  return guarded(ctx, [&] {
    if (!d) return argument(ctx, "derivation");
    if (!out) return argument(ctx, "out");
    *out = dup(schedule_to_json(d->derivation.query, d->derivation.schedule));
    return SV_OK;
  });
}

sv_status sv_certify(sv_context* ctx, int r, const char* s, sv_certificate** cert,
                     char** failure_json) {
  return guarded(ctx, [&] {
    if (!s) return argument(ctx, "s");
    if (!cert) return argument(ctx, "cert");
    *cert = nullptr;
    if (failure_json) *failure_json = nullptr;
    RunConfig c = ctx->config;
    const SplitShape shape = SplitShape::make(r, parse_integer(s));
    const CertifyOutcome outcome = certify(shape, c);
    if (const auto* ok = std::get_if<Certificate>(&outcome)) {
      *cert = new sv_certificate{*ok};
      return SV_OK;
    }
    const auto& f = std::get<FailureReport>(outcome);
    ctx->error = f.message;
    if (failure_json) *failure_json = dup(failure_to_json(f));
    return SV_NEGATIVE;
  });
}

sv_status sv_certificate_from_json(sv_context* ctx, const char* json,
                                   sv_certificate** out) {
  return guarded(ctx, [&] {
    if (!json) return argument(ctx, "json");
    if (!out) return argument(ctx, "out");
    *out = new sv_certificate{certificate_from_json(json)};
    return SV_OK;
  });
}

void sv_certificate_free(sv_certificate* cert) { delete cert; }

sv_status sv_certificate_to_json(sv_context* ctx, const sv_certificate* cert,
                                 char** out) {
  return guarded(ctx, [&] {
    if (!cert) return argument(ctx, "cert");
    if (!out) return argument(ctx, "out");
    *out = dup(certificate_to_json(cert->certificate));
    return SV_OK;
  });
}

sv_status sv_certificate_summary(sv_context* ctx, const sv_certificate* cert,
                                 char** out) {
  return guarded(ctx, [&] {
    if (!cert) return argument(ctx, "cert");
    if (!out) return argument(ctx, "out");
    const Certificate& c = cert->certificate;
    std::ostringstream os;
    os << c.shape.r << ' ' << to_string(c.shape.s) << ' '
       << to_string(c.conclusion.certified_s) << ' ' << c.steps.size() << ' '
       << (c.conclusion.kind == ConclusionKind::kDirect ? "direct" : "contradiction");
    *out = dup(os.str());
    return SV_OK;
  });
}

sv_status sv_verify(sv_context* ctx, const sv_certificate* cert, char** report) {
  return guarded(ctx, [&] {
    if (!cert) return argument(ctx, "cert");
    const VerifyResult v = verify_certificate(cert->certificate);
    if (report) *report = dup(join_lines(v.failed));
    if (!v.ok) ctx->error = "verification failed at " + v.failed.front();
    return v.ok ? SV_OK : SV_NEGATIVE;
  });
}

sv_status sv_replay(sv_context* ctx, const char* chains_json, char** report) {
  return guarded(ctx, [&] {
    if (!chains_json) return argument(ctx, "chains");
    if (!report) return argument(ctx, "report");
    std::vector<ReplayReport> reports;
    bool all = true;
    for (const auto& chain : published_chains_from_json(chains_json)) {
      reports.push_back(replay_published_chain(chain, ctx->config));
      all = all && reports.back().contradiction;
    }
    *report = dup(replay_report_to_json(reports));
    return all ? SV_OK : SV_NEGATIVE;
  });
}

sv_status sv_equal_parts(sv_context* ctx, int r, char** out) {
  return guarded(ctx, [&] {
    if (!out) return argument(ctx, "out");
    *out = dup(to_string(equal_parts_threshold(r, ctx->config)));
    return SV_OK;
  });
}

sv_status sv_find_min(sv_context* ctx, int r, const char* start, int max_probes,
                      char** report_json) {
  return guarded(ctx, [&] {
    if (!start) return argument(ctx, "start");
    if (!report_json) return argument(ctx, "report");
    const SearchReport rep =
        find_min_certifiable_s(r, parse_integer(start), ctx->config, max_probes);
    *report_json = dup(search_report_to_json(rep));
    return rep.s_min ? SV_OK : SV_NEGATIVE;
  });
}

sv_status sv_lab_expand(sv_context* ctx, uint64_t seed, int dim, int n, int count,
                        char** report) {
  return guarded(ctx, [&] {
    if (!report) return argument(ctx, "report");
    const ExpandReport rep = lab_expand(seed, dim, n, count);
    *report = dup(join_lines(rep.lines));
    return rep.mismatches == 0 && rep.diagonal_mismatches == 0 ? SV_OK : SV_NEGATIVE;
  });
}

sv_status sv_lab_trick(sv_context* ctx, uint64_t seed, int n, int dim, int count,
                       char** report) {
  return guarded(ctx, [&] {
    if (!report) return argument(ctx, "report");
    const TrickReport rep = lab_trick(seed, n, dim, count);
    *report = dup(join_lines(rep.lines));
    return rep.exact == rep.count && rep.bound_violations == 0 ? SV_OK : SV_NEGATIVE;
  });
}

sv_status sv_lab_additive(sv_context* ctx, const char* lambdas_text, const char* tol,
                          long box_cap, uint64_t seed, int count, const char* theta,
                          char** report) {
  return guarded(ctx, [&] {
    if (!tol) return argument(ctx, "tol");
    if (!report) return argument(ctx, "report");
    const Rational tol_q = parse_rational(tol);
    const Rational theta_q = theta ? parse_rational(theta) : Rational(0);
    std::vector<AdditiveInstance> instances;
    if (lambdas_text) {
      instances.push_back({parse_rational_list(lambdas_text), theta_q});
    } else {
      if (count < 1) throw DomainError("count must be positive");
      std::mt19937_64 rng(seed);
      for (int i = 0; i < count; ++i) {
        instances.push_back(random_additive_instance(rng));
        instances.back().theta = theta_q;
      }
    }
    std::ostringstream os;
    int found = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const AdditiveInstance& inst = instances[i];
      inst.validate();
      const auto w = additive_search_doubling(inst, tol_q, box_cap);
      os << "instance " << i << ":";
      if (!w) {
        os << " not found within box " << box_cap << "\n";
        continue;
      }
      const bool valid = check_witness(inst, tol_q, w->t);
      if (valid) ++found;
      os << " t = (";
      for (std::size_t k = 0; k < w->t.size(); ++k) os << (k ? "," : "") << w->t[k];
      os << ") value = " << w->value.to_string() << " size = " << w->size.to_string()
         << " box = " << w->box;
      if (w->empirical_exponent) os << " exponent = " << *w->empirical_exponent;
      os << " reference = " << w->reference_exponent
         << (valid ? " verified" : " INVALID") << "\n";
    }
    os << found << "/" << instances.size() << " witnesses verified\n";
    *report = dup(os.str());
    return found == static_cast<int>(instances.size()) ? SV_OK : SV_NEGATIVE;
  });
}

}  // extern "C"
