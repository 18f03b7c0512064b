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

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "smallvalues/smallvalues.h"

#ifndef SMALLVALUES_DATA_DIR
#define SMALLVALUES_DATA_DIR "data"
#endif

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct Failure {
  int code;
  std::string message;
};

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { sv_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

class Context {
 public:
  Context() : ctx_(sv_context_new()) {
    if (!ctx_) throw Failure{kExitInternal, "cannot allocate context"};
  }
  ~Context() { sv_context_free(ctx_); }
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  sv_context* get() const { return ctx_; }
  std::string error() const { return sv_last_error(ctx_); }

  // Usage-class statuses become exit 2; SV_NEGATIVE is returned to the caller.
  sv_status check(sv_status st) const {
    switch (st) {
      case SV_OK:
      case SV_NEGATIVE:
        return st;
      case SV_ERR_INTERNAL:
        throw Failure{kExitInternal, "internal error: " + error()};
      default:
        throw Failure{kExitUsage, std::string(sv_status_name(st)) + ": " + error()};
    }
  }

 private:
  sv_context* ctx_;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitUsage, "cannot read " + path.string()};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Failure{kExitUsage, "cannot write " + path.string()};
}

// A file path (also looked up in the data directory) or inline text.
std::string file_or_inline(const std::string& arg, const fs::path& data_dir) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) return read_file(arg);
  if (!arg.empty() && arg.find_first_of("[,") == std::string::npos &&
      fs::is_regular_file(data_dir / arg, ec)) {
    return read_file(data_dir / arg);
  }
  const bool looks_like_path =
      arg.find(".json") != std::string::npos || arg.find('/') != std::string::npos;
  if (looks_like_path && arg.find('[') == std::string::npos) {
    throw Failure{kExitUsage, "no such file: " + arg};
  }
  return arg;
}

struct ConfigFlags {
  std::optional<std::string> config_file;
  std::optional<std::string> epsilon, granularity, margin;
  std::optional<long> budget, iteration_cap;
  std::optional<std::uint64_t> seed;

  void add(CLI::App* app) {
    app->add_option("--config", config_file, "config file (flags override it)");
    app->add_option("--epsilon", epsilon, "epsilon (default 1e-13)");
    app->add_option("--budget", budget, "optimizer evaluation budget (default 20000)");
    app->add_option("--seed", seed, "optimizer seed (default 0)");
    app->add_option("--granularity", granularity, "E1 grid spacing (default 1e-4)");
    app->add_option("--margin", margin, "E2 safety margin (default 1e-6)");
    app->add_option("--iteration-cap", iteration_cap, "chain step limit (default 50)");
  }

  void apply(const Context& ctx) const {
    if (config_file) {
      ctx.check(sv_config_load_json(ctx.get(), read_file(*config_file).c_str()));
    }
    auto set = [&](const char* key, const std::string& value) {
      ctx.check(sv_config_set(ctx.get(), key, value.c_str()));
    };
    if (epsilon) set("epsilon", *epsilon);
    if (budget) set("budget", std::to_string(*budget));
    if (seed) set("seed", std::to_string(*seed));
    if (granularity) set("granularity", *granularity);
    if (margin) set("margin", *margin);
    if (iteration_cap) set("iteration_cap", std::to_string(*iteration_cap));
  }
};

void print_progress(const char* line, void*) { std::cerr << line << "\n"; }

struct Derivation {
  sv_derivation* d = nullptr;
  ~Derivation() { sv_derivation_free(d); }
};

struct Cert {
  sv_certificate* c = nullptr;
  ~Cert() { sv_certificate_free(c); }
};

std::string derivation_total(const Context& ctx, const Derivation& d) {
  OwnedString s;
  ctx.check(sv_derivation_total(ctx.get(), d.d, &s.p));
  return s.str();
}

void write_derivation(const Context& ctx, const Derivation& d, const std::string& path) {
  OwnedString s;
  ctx.check(sv_derivation_to_json(ctx.get(), d.d, &s.p));
  write_file(path, s.str());
}

std::string group_digits(const std::string& digits) {
  std::string out;
  const std::size_t n = digits.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && (n - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

struct HeadlinePair {
  int r;
  const char* s;
};
constexpr HeadlinePair kHeadlinePairs[] = {{1, "358823708"}, {2, "120897257"}, {3, "35042291"},
                                    {4, "8324100"},   {5, "1164774"},   {6, "77027"}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smallvalues: exact bounds for split cubic forms taking small values"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sv_version()));
  std::string data_dir = SMALLVALUES_DATA_DIR;
  unsigned threads = 0;
  bool verbose = false;
  app.add_option("--data-dir", data_dir, "directory holding published parameter sets");
  app.add_option("--threads", threads, "optimizer threads (0: SMALLVALUES_THREADS or all)");
  app.add_flag("-v,--verbose", verbose, "print optimizer progress on stderr");

  // hw
  auto* hw = app.add_subcommand("hw", "bound for an explicit delta schedule");
  int hw_n = 0;
  std::string hw_E, hw_deltas, hw_out;
  hw->add_option("--n", hw_n, "number of vectors")->required();
  hw->add_option("--E", hw_E, "exponent, e.g. 24+1e-13")->required();
  hw->add_option("--deltas", hw_deltas, "schedule file or inline list, e.g. [0.5]")
      ->required();
  hw->add_option("--out", hw_out, "write the derivation here");

  // optimize
  auto* opt = app.add_subcommand("optimize", "search a delta schedule");
  int opt_n = 0;
  std::string opt_E, opt_warm, opt_out, opt_schedule_out;
  long opt_budget = 20000;
  std::uint64_t opt_seed = 0;
  opt->add_option("--n", opt_n, "number of vectors")->required();
  opt->add_option("--E", opt_E, "exponent")->required();
  opt->add_option("--budget", opt_budget, "evaluation budget")->capture_default_str();
  opt->add_option("--seed", opt_seed, "seed")->capture_default_str();
  opt->add_option("--warm", opt_warm, "warm-start schedule file or inline list");
  opt->add_option("--out", opt_out, "write the derivation here");
  opt->add_option("--schedule-out", opt_schedule_out, "write the schedule here");

  // certify
  auto* cert = app.add_subcommand("certify", "certify s_0^(r) <= s");
  int cert_r = 0;
  std::string cert_s, cert_out;
  ConfigFlags cert_cfg;
  cert->add_option("--r", cert_r, "number of parts, 1..6")->required();
  cert->add_option("--s", cert_s, "number of variables")->required();
  cert->add_option("--out", cert_out, "certificate or failure report path");
  cert_cfg.add(cert);

  // verify
  auto* ver = app.add_subcommand("verify", "replay a certificate exactly");
  std::string ver_path;
  ver->add_option("path", ver_path, "certificate file")->required();

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "certify and verify all six pairs");
  std::string rep_out_dir;
  bool rep_chains = false;
  ConfigFlags rep_cfg;
  rep->add_option("--out-dir", rep_out_dir, "write cert_r<r>.json files here");
  rep->add_flag("--published-chains", rep_chains, "also replay the published chains");
  rep_cfg.add(rep);

  // parts
  auto* parts = app.add_subcommand("parts", "equal-parts threshold for nine vectors");
  int parts_r = 0;
  ConfigFlags parts_cfg;
  parts->add_option("--r", parts_r, "number of groups, 1..9")->required();
  parts_cfg.add(parts);

  // scan
  auto* scan = app.add_subcommand("scan", "walk s down while certification succeeds");
  int scan_r = 0;
  std::string scan_start, scan_out;
  int scan_probes = 48;
  ConfigFlags scan_cfg;
  scan->add_option("--r", scan_r, "number of parts, 2..6")->required();
  scan->add_option("--start", scan_start, "starting s")->required();
  scan->add_option("--max-probes", scan_probes, "probe limit")->capture_default_str();
  scan->add_option("--out", scan_out, "write the search report here");
  scan_cfg.add(scan);

  // config
  auto* cfg = app.add_subcommand("config", "write a config file");
  std::string cfg_out;
  ConfigFlags cfg_flags;
  cfg->add_option("--out", cfg_out, "config file path");
  cfg_flags.add(cfg);

  // canon
  auto* canon = app.add_subcommand("canon", "re-serialize a file to stdout");
  std::string canon_path;
  canon->add_option("path", canon_path, "file written by this tool")->required();

  // lab
  auto* lab = app.add_subcommand("lab", "cubic-form laboratory");
  lab->require_subcommand(1);
  auto* lab_expand = lab->add_subcommand("expand", "expansion round trip");
  std::uint64_t le_seed = 0;
  int le_dim = 5, le_n = 3, le_count = 100;
  lab_expand->add_option("--seed", le_seed)->capture_default_str();
  lab_expand->add_option("--dim", le_dim)->capture_default_str();
  lab_expand->add_option("--n", le_n)->capture_default_str();
  lab_expand->add_option("--count", le_count, "evaluations")->capture_default_str();
  auto* lab_trick = lab->add_subcommand("trick", "linear-dependence residual identity");
  std::uint64_t lt_seed = 0;
  int lt_dim = 6, lt_n = 4, lt_count = 200;
  lab_trick->add_option("--seed", lt_seed)->capture_default_str();
  lab_trick->add_option("--dim", lt_dim)->capture_default_str();
  lab_trick->add_option("--n", lt_n)->capture_default_str();
  lab_trick->add_option("--count", lt_count, "instances")->capture_default_str();
  auto* lab_add = lab->add_subcommand("additive", "small values of diagonal forms");
  std::optional<std::string> la_lambdas;
  std::string la_tol = "1", la_theta = "0";
  long la_box = 1000;
  std::uint64_t la_seed = 0;
  int la_count = 1;
  lab_add->add_option("--lambdas", la_lambdas, "8 or 9 coefficients, e.g. 1,1,1");
  lab_add->add_option("--tol", la_tol, "tolerance")->capture_default_str();
  lab_add->add_option("--box", la_box, "largest box (doubling from 1)")
      ->capture_default_str();
  lab_add->add_option("--seed", la_seed, "seed for random instances")
      ->capture_default_str();
  lab_add->add_option("--count", la_count, "random instances")->capture_default_str();
  lab_add->add_option("--theta", la_theta, "theta for the reference exponent")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Context ctx;
    if (threads) ctx.check(sv_set_threads(ctx.get(), threads));
    if (verbose) sv_set_progress(ctx.get(), print_progress, nullptr);
    const fs::path data(data_dir);

    if (*hw) {
      const std::string sched = file_or_inline(hw_deltas, data);
      Derivation d;
      ctx.check(sv_hw_bound(ctx.get(), hw_n, hw_E.c_str(), sched.c_str(), &d.d));
      if (!hw_out.empty()) write_derivation(ctx, d, hw_out);
      std::cout << derivation_total(ctx, d) << "\n";
      return kExitOk;
    }

    if (*opt) {
      ctx.check(sv_config_set(ctx.get(), "budget", std::to_string(opt_budget).c_str()));
      ctx.check(sv_config_set(ctx.get(), "seed", std::to_string(opt_seed).c_str()));
      std::string warm;
      if (!opt_warm.empty()) warm = file_or_inline(opt_warm, data);
      Derivation d;
      ctx.check(sv_optimize(ctx.get(), opt_n, opt_E.c_str(),
                            opt_warm.empty() ? nullptr : warm.c_str(), &d.d));
      if (!opt_out.empty()) write_derivation(ctx, d, opt_out);
      if (!opt_schedule_out.empty()) {
        OwnedString s;
        ctx.check(sv_derivation_schedule_json(ctx.get(), d.d, &s.p));
        write_file(opt_schedule_out, s.str());
      }
      OwnedString js;
      ctx.check(sv_derivation_schedule_json(ctx.get(), d.d, &js.p));
      std::string list;
      const auto parsed = nlohmann::ordered_json::parse(js.str());
      for (const auto& x : parsed.at("deltas")) {
        list += (list.empty() ? "" : ",") + x.get<std::string>();
      }
      std::cout << derivation_total(ctx, d) << "\ndeltas: [" << list << "]\n";
      return kExitOk;
    }

    if (*cert) {
      cert_cfg.apply(ctx);
      Cert c;
      OwnedString failure;
      const sv_status st = ctx.check(
          sv_certify(ctx.get(), cert_r, cert_s.c_str(), &c.c, &failure.p));
      const std::string out =
          cert_out.empty() ? "cert_r" + std::to_string(cert_r) + ".json" : cert_out;
      if (st == SV_NEGATIVE) {
        write_file(out, failure.str());
        std::cout << "not certified: " << ctx.error() << "\nreport: " << out << "\n";
        return kExitNegative;
      }
      OwnedString js, summary;
      ctx.check(sv_certificate_to_json(ctx.get(), c.c, &js.p));
      ctx.check(sv_certificate_summary(ctx.get(), c.c, &summary.p));
      write_file(out, js.str());
      std::istringstream is(summary.str());
      std::string r, s, cs, steps, kind;
      is >> r >> s >> cs >> steps >> kind;
      std::cout << "certified: s_0^(" << r << ") <= " << cs;
      if (cs != cert_s) std::cout << " <= " << cert_s;
      std::cout << " (" << kind << ", " << steps << " chain steps)\ncertificate: " << out
                << "\n";
      return kExitOk;
    }

    if (*ver) {
      const std::string text = read_file(ver_path);
      Cert c;
      const sv_status parsed = sv_certificate_from_json(ctx.get(), text.c_str(), &c.c);
      if (parsed != SV_OK) {
        if (parsed == SV_ERR_INTERNAL) ctx.check(parsed);
        std::cout << "FAILED: unreadable certificate: " << ctx.error() << "\n";
        return kExitNegative;
      }
      OwnedString report;
      const sv_status st = ctx.check(sv_verify(ctx.get(), c.c, &report.p));
      if (st == SV_OK) {
        std::cout << "OK\n";
        return kExitOk;
      }
      std::cout << "FAILED checks:\n" << report.str();
      return kExitNegative;
    }

    if (*rep) {
      rep_cfg.apply(ctx);
      bool all = true;
      {
        Derivation d;
        const std::string sched = read_file(data / "paper9.json");
        ctx.check(sv_hw_bound(ctx.get(), 9, "24+1e-13", sched.c_str(), &d.d));
        std::cout << "hw^(9)(24+1e-13) with the published schedule = "
                  << group_digits(derivation_total(ctx, d)) << "\n";
      }
      for (const auto& [r, s] : kHeadlinePairs) {
        Cert c;
        OwnedString failure;
        const sv_status st = ctx.check(sv_certify(ctx.get(), r, s, &c.c, &failure.p));
        std::cout << "s_0^(" << r << ") <= " << group_digits(s);
        if (st != SV_OK) {
          all = false;
          std::cout << "  NOT CERTIFIED: " << ctx.error() << "\n";
          continue;
        }
        OwnedString js, summary, report;
        ctx.check(sv_certificate_to_json(ctx.get(), c.c, &js.p));
        ctx.check(sv_certificate_summary(ctx.get(), c.c, &summary.p));
        const bool verified = ctx.check(sv_verify(ctx.get(), c.c, &report.p)) == SV_OK;
        all = all && verified;
        std::istringstream is(summary.str());
        std::string rr, ss, cs, steps, kind;
        is >> rr >> ss >> cs >> steps >> kind;
        std::cout << "  certified";
        if (cs != s) std::cout << " at s = " << group_digits(cs);
        std::cout << ", " << kind << ", " << steps << " steps, "
                  << (verified ? "verified" : "VERIFICATION FAILED") << "\n";
        if (!rep_out_dir.empty()) {
          write_file(fs::path(rep_out_dir) / ("cert_r" + std::to_string(r) + ".json"),
                     js.str());
        }
      }
      if (rep_chains) {
        const std::string chains = read_file(data / "published_chains.json");
        OwnedString report;
        const sv_status st = ctx.check(sv_replay(ctx.get(), chains.c_str(), &report.p));
        const auto j = nlohmann::ordered_json::parse(report.str());
        for (const auto& c : j["chains"]) {
          std::cout << "published chain r = " << c["r"].get<int>() << ", s = "
                    << c["s"].dump() << ":\n";
          for (const auto& l : c["lines"]) std::cout << "  " << l.get<std::string>() << "\n";
        }
        if (!rep_out_dir.empty()) {
          write_file(fs::path(rep_out_dir) / "replay.json", report.str());
        }
        all = all && st == SV_OK;
      }
      return all ? kExitOk : kExitNegative;
    }

    if (*parts) {
      parts_cfg.apply(ctx);
      OwnedString s;
      ctx.check(sv_equal_parts(ctx.get(), parts_r, &s.p));
      std::cout << s.str() << "\n";
      return kExitOk;
    }

    if (*scan) {
      scan_cfg.apply(ctx);
      OwnedString report;
      const sv_status st = ctx.check(
          sv_find_min(ctx.get(), scan_r, scan_start.c_str(), scan_probes, &report.p));
      if (!scan_out.empty()) write_file(scan_out, report.str());
      const auto j = nlohmann::ordered_json::parse(report.str());
      for (const auto& p : j["probes"]) {
        std::cout << "s = " << p["s"].dump() << ": "
                  << (p["certified"].get<bool>() ? "certified" : "failed") << " ("
                  << p["detail"].get<std::string>() << ")\n";
      }
      for (const auto& note : j["non_monotone"]) {
        std::cout << "non-monotone: " << note.get<std::string>() << "\n";
      }
      std::cout << "least certified s: " << (j["s_min"].is_null() ? "none" : j["s_min"].dump())
                << "\n";
      return st == SV_OK ? kExitOk : kExitNegative;
    }

    if (*cfg) {
      cfg_flags.apply(ctx);
      OwnedString s;
      ctx.check(sv_config_to_json(ctx.get(), &s.p));
      if (cfg_out.empty()) {
        std::cout << s.str();
      } else {
        write_file(cfg_out, s.str());
      }
      return kExitOk;
    }

    if (*canon) {
      const std::string text = read_file(canon_path);
      OwnedString s;
      ctx.check(sv_reserialize(ctx.get(), text.c_str(), &s.p));
      std::cout << s.str();
      return kExitOk;
    }

    if (*lab_expand) {
      OwnedString report;
      const sv_status st =
          ctx.check(sv_lab_expand(ctx.get(), le_seed, le_dim, le_n, le_count, &report.p));
      std::cout << report.str();
      return st == SV_OK ? kExitOk : kExitNegative;
    }
    if (*lab_trick) {
      OwnedString report;
      const sv_status st =
          ctx.check(sv_lab_trick(ctx.get(), lt_seed, lt_n, lt_dim, lt_count, &report.p));
      std::cout << report.str();
      return st == SV_OK ? kExitOk : kExitNegative;
    }
    if (*lab_add) {
      OwnedString report;
      const sv_status st = ctx.check(sv_lab_additive(
          ctx.get(), la_lambdas ? la_lambdas->c_str() : nullptr, la_tol.c_str(), la_box,
          la_seed, la_count, la_theta.c_str(), &report.p));
      std::cout << report.str();
      return st == SV_OK ? kExitOk : kExitNegative;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
