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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "smallvalues/errors.hpp"
#include "smallvalues/schedule.hpp"

namespace smallvalues {
namespace {

constexpr double kLo = 1e-6;
constexpr double kHi = 1.0 - 1e-12;
// Golden-section bracket for interior deltas; only the last delta may
// approach 1 without blowing up every later exponent.
constexpr double kLineHi = 0.999;
constexpr int kGoldenIterations = 60;
constexpr long kEvalsPerRestart = 5000;
constexpr long kMaxRestarts = 16;
constexpr unsigned kDeltaDigits = 18;
// DP candidate grid: relative window around the trajectory, points per
// s-jump interval, and a cap on jump points per level.
constexpr double kWindow = 0.06;
constexpr int kInteriorPoints = 2;
constexpr long kMaxJumpsPerLevel = 1200;
constexpr int kDpPasses = 4;
constexpr int kPolishPasses = 8;
constexpr long kPolishSteps[] = {0, 1, 2, 3, 5, 8, 13, 21};
constexpr double kInf = std::numeric_limits<double>::infinity();

// Ceiling-free surrogate of hw_bound: both ceilings dropped.
class Relaxation {
 public:
  Relaxation(int n, double E) : n_(n), E_(E) {}

  double operator()(const std::vector<double>& deltas) {
    ++evaluations_;
    double e = E_;
    double total = 0.0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      const double m = n_ - 1 - static_cast<double>(i);
      const double s = 1.0 + (e + 3.0) * m * (m + 1.0) / 2.0;
      total += s * (s + 1.0) * (e + 3.0) / (2.0 * deltas[i]);
      e = (e + 3.0 * deltas[i]) / (1.0 - deltas[i]);
    }
    return std::isfinite(total) ? total : kInf;
  }

  long evaluations() const { return evaluations_; }

 private:
  int n_;
  double E_;
  long evaluations_ = 0;
};

template <typename F>
std::pair<double, double> golden_section(F&& f, double a, double b) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < kGoldenIterations; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

// Cyclic coordinate descent over every delta but the last, which stays at
// the top of the box.
std::vector<double> coordinate_descent(Relaxation& f, std::vector<double> d,
                                       long allotment) {
  const long line_cost = kGoldenIterations + 2;
  const long stop = f.evaluations() + allotment;
  double current = f(d);
  while (f.evaluations() + line_cost <= stop) {
    const double before = current;
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      if (f.evaluations() + line_cost > stop) break;
      auto line = [&](double x) {
        const double saved = d[i];
        d[i] = x;
        const double v = f(d);
        d[i] = saved;
        return v;
      };
      const auto [x, fx] = golden_section(line, kLo, kLineHi);
      if (fx < current) {
        d[i] = x;
        current = fx;
      }
    }
    if (!(current < before * (1.0 - 1e-15))) break;
  }
  return d;
}

std::vector<double> trajectory(double E, const std::vector<double>& deltas) {
  std::vector<double> X{E};
  for (std::size_t i = 0; i + 1 < deltas.size(); ++i) {
    X.push_back((X.back() + 3.0 * deltas[i]) / (1.0 - deltas[i]));
  }
  return X;
}

Rational clamp_delta(Rational d) {
  if (d < min_search_delta()) return min_search_delta();
  if (d > max_search_delta()) return max_search_delta();
  return d;
}

DeltaSchedule schedule_from_doubles(const std::vector<double>& deltas) {
  DeltaSchedule s;
  for (std::size_t i = 0; i + 1 < deltas.size(); ++i) {
    s.deltas.push_back(clamp_delta(
        round_down_decimal(Rational::from_double(deltas[i]), kDeltaDigits)));
  }
  s.deltas.push_back(max_search_delta());
  return s;
}

std::vector<double> doubles_from_schedule(const DeltaSchedule& s) {
  std::vector<double> d;
  for (const Rational& x : s.deltas) d.push_back(x.to_double());
  return d;
}

// Deltas that steer the exact exponent sequence to (at most) `targets`.
// Rounding each delta down keeps every realised exponent <= its target, so
// no s can jump above the planned one.
DeltaSchedule rebuild(const Rational& E, const std::vector<Rational>& targets) {
  DeltaSchedule s;
  Rational cur = E;
  for (const Rational& t : targets) {
    const Rational d = clamp_delta(round_down_decimal(
        (t - cur) / (t + Rational(3)), kDeltaDigits));
    s.deltas.push_back(d);
    cur = (cur + Rational(3) * d) / (Rational(1) - d);
  }
  s.deltas.push_back(max_search_delta());
  return s;
}

struct Candidate {
  Rational exact;
  double value;
  double s;
};

std::vector<Candidate> level_candidates(int n_lower, double center) {
  const long pairs = static_cast<long>(n_lower) * (n_lower + 1) / 2;
  const double lo = center * (1.0 - kWindow), hi = center * (1.0 + kWindow);
  long k0 = std::max(static_cast<long>(std::ceil((lo + 3.0) * pairs)),
                     3 * pairs + 1);
  long k1 = std::max(static_cast<long>(std::floor((hi + 3.0) * pairs)), k0);
  if (k1 - k0 + 1 > kMaxJumpsPerLevel) {
    const long kc = std::lround((center + 3.0) * pairs);
    k0 = std::max(kc - kMaxJumpsPerLevel / 2, 3 * pairs + 1);
    k1 = k0 + kMaxJumpsPerLevel - 1;
  }
  std::vector<Candidate> out;
  const long parts = kInteriorPoints + 1;
  for (long k = k0; k <= k1; ++k) {
    // (E+3) * pairs = k - q/parts lies in (k-1, k], so s = 1 + k.
    for (long q = 0; q < parts; ++q) {
      const Rational e =
          Rational(BigInt(k * parts - q), BigInt(parts * pairs)) - Rational(3);
      if (e.sign() <= 0) continue;
      out.push_back({e, e.to_double(), static_cast<double>(k + 1)});
    }
  }
  const Rational c = round_down_decimal(Rational::from_double(center), 15);
  if (c.sign() > 0) {
    const BigInt s = 1 + ceil((c + Rational(3)) * Rational(pairs));
    out.push_back({c, c.to_double(), s.get_d()});
  }
  return out;
}

// Exact-threshold dynamic program over the exponent chain centred on X.
// Returns the planned exponents for levels below the top.
std::vector<Rational> chain_dp(int n, const Rational& E,
                               const std::vector<double>& X) {
  std::vector<std::vector<Candidate>> grid;
  {
    const long pairs = static_cast<long>(n - 1) * n / 2;
    const BigInt s = 1 + ceil((E + Rational(3)) * Rational(pairs));
    grid.push_back({{E, E.to_double(), s.get_d()}});
  }
  for (int j = 1; j + 1 < n; ++j) grid.push_back(level_candidates(n - 1 - j, X[j]));

  const std::size_t last = grid.size() - 1;
  std::vector<double> V(grid[last].size());
  for (std::size_t b = 0; b < V.size(); ++b) {
    const Candidate& c = grid[last][b];
    V[b] = std::ceil(c.s * (c.s + 1.0) * (c.value + 3.0) / (2.0 * kHi));
  }
  std::vector<std::vector<std::size_t>> choice(last);
  for (std::size_t j = last; j-- > 0;) {
    const auto& cur = grid[j];
    const auto& next = grid[j + 1];
    std::vector<double> W(cur.size(), kInf);
    choice[j].assign(cur.size(), 0);
    for (std::size_t a = 0; a < cur.size(); ++a) {
      const double A = cur[a].value;
      const double base = cur[a].s * (cur[a].s + 1.0) * (A + 3.0) / 2.0;
      for (std::size_t b = 0; b < next.size(); ++b) {
        const double B = next[b].value;
        if (!(B > A) || (B - A) / (B + 3.0) < kLo || V[b] == kInf) continue;
        const double v = std::ceil(base * (B + 3.0) / (B - A)) + V[b];
        if (v < W[a]) {
          W[a] = v;
          choice[j][a] = b;
        }
      }
    }
    V = std::move(W);
  }
  std::vector<Rational> targets;
  std::size_t at = 0;
  for (std::size_t j = 0; j < last; ++j) {
    at = choice[j][at];
    targets.push_back(grid[j + 1][at].exact);
  }
  return targets;
}

struct Evaluated {
  DeltaSchedule schedule;
  HwDerivation derivation;
  std::string stage;
};

bool better(const Evaluated& a, const Evaluated& b) {
  if (a.derivation.total != b.derivation.total) {
    return a.derivation.total < b.derivation.total;
  }
  return a.schedule < b.schedule;
}

// Smallest decimal >= q with kDeltaDigits digits.
Rational round_up_decimal(const Rational& q) {
  const Rational down = round_down_decimal(q, kDeltaDigits);
  return down == q ? down : down + pow10_inverse(kDeltaDigits);
}

// Exact local search on the ceilings. With C = s(s+1)(E+3)/2, the term
// ceil(C/delta) equals c for every delta >= C/c; moving a delta down to
// that point keeps its term and lowers every later exponent, and moving it
// up to C/(c-t) trades t units here against later terms.
Evaluated polish(const HwQuery& query, Evaluated best) {
  for (int pass = 0; pass < kPolishPasses; ++pass) {
    bool improved = false;
    for (std::size_t i = 0; i + 1 < best.schedule.size(); ++i) {
      const HwLevel& lv = best.derivation.levels[i];
      const Rational C = Rational(BigInt(lv.s * (lv.s + 1))) *
                         (lv.E + Rational(3)) / Rational(2);
      for (long t : kPolishSteps) {
        const BigInt c = lv.cost - t;
        if (c < 1) break;
        const Rational d = round_up_decimal(C / Rational(c));
        if (d < min_search_delta() || d > max_search_delta() ||
            d == best.schedule.deltas[i]) {
          continue;
        }
        DeltaSchedule s = best.schedule;
        s.deltas[i] = d;
        Evaluated ev{s, hw_bound(query, s), best.stage};
        if (better(ev, best)) {
          best = std::move(ev);
          improved = true;
          break;
        }
      }
    }
    if (!improved) break;
  }
  return best;
}

struct Job {
  std::vector<double> start;
  std::optional<DeltaSchedule> exact_start;
  long allotment = 0;
  std::string name;
};

struct JobOutcome {
  std::vector<Evaluated> candidates;
  long evaluations = 0;
};

JobOutcome run_job(const HwQuery& query, const Job& job) {
  JobOutcome out;
  const double E = query.E.to_double();
  std::vector<double> deltas;
  if (job.exact_start) {
    out.candidates.push_back({*job.exact_start, hw_bound(query, *job.exact_start),
                              job.name});
    deltas = doubles_from_schedule(*job.exact_start);
  } else {
    Relaxation f(query.n, E);
    deltas = coordinate_descent(f, job.start, job.allotment);
    out.evaluations = f.evaluations();
    const DeltaSchedule s = schedule_from_doubles(deltas);
    out.candidates.push_back({s, hw_bound(query, s), job.name + " cd"});
  }
  BigInt best = out.candidates.back().derivation.total;
  for (int pass = 0; pass < kDpPasses; ++pass) {
    const DeltaSchedule s = rebuild(query.E, chain_dp(query.n, query.E,
                                                      trajectory(E, deltas)));
    Evaluated ev{s, hw_bound(query, s), job.name + " dp" + std::to_string(pass)};
    const bool improved = ev.derivation.total < best;
    out.candidates.push_back(std::move(ev));
    if (!improved) break;
    best = out.candidates.back().derivation.total;
    deltas = doubles_from_schedule(s);
  }
  const auto top = std::min_element(out.candidates.begin(), out.candidates.end(),
                                    better);
  Evaluated polished = polish(query, *top);
  polished.stage += " polish";
  out.candidates.push_back(std::move(polished));
  return out;
}

unsigned thread_cap(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SMALLVALUES_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

OptimizeResult optimize_schedule(const HwQuery& query,
                                 const OptimizerOptions& options) {
  query.validate();
  if (options.budget < 1) throw ConfigError("optimizer budget must be >= 1");
  if (options.warm_start &&
      options.warm_start->size() != static_cast<std::size_t>(query.n - 1)) {
    throw ConfigError("warm start has " +
                      std::to_string(options.warm_start->size()) +
                      " deltas, level " + std::to_string(query.n) + " needs " +
                      std::to_string(query.n - 1));
  }

  std::vector<Job> jobs;
  if (query.n == 2) {
    jobs.push_back({{}, DeltaSchedule{{max_search_delta()}}, 0, "top"});
  } else if (query.n > 2) {
    const long restarts =
        std::clamp(options.budget / kEvalsPerRestart, 1L, kMaxRestarts);
    std::mt19937_64 rng(options.seed);
    for (long k = 0; k < restarts; ++k) {
      std::vector<double> start(query.n - 1, 0.25);
      if (k > 0) {
        for (double& d : start) d = 0.05 + 0.55 * unit_uniform(rng);
      }
      start.back() = kHi;
      const long allotment =
          options.budget / restarts + (k == 0 ? options.budget % restarts : 0);
      jobs.push_back({std::move(start), std::nullopt, allotment,
                      "restart" + std::to_string(k)});
    }
  }
  if (options.warm_start) {
    jobs.push_back({{}, options.warm_start, 0, "warm"});
  }
  if (is_published_nine_query(query) &&
      !(options.warm_start && *options.warm_start == published_nine_schedule())) {
    jobs.push_back({{}, published_nine_schedule(), 0, "published"});
  }

  if (jobs.empty()) {  // n == 1: a single vector costs nothing
    OptimizeResult r;
    r.derivation = hw_bound(query, r.schedule);
    return r;
  }

  std::vector<JobOutcome> outcomes(jobs.size());
  const unsigned threads =
      std::min<unsigned>(thread_cap(options.threads),
                         static_cast<unsigned>(jobs.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) outcomes[i] = run_job(query, jobs[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs.size());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
          try {
            outcomes[i] = run_job(query, jobs[i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  OptimizeResult result;
  const Evaluated* best = nullptr;
  for (const JobOutcome& o : outcomes) {
    result.evaluations += o.evaluations;
    for (const Evaluated& c : o.candidates) {
      if (options.progress) {
        options.progress("candidate " + to_string(c.derivation.total) + " " +
                         c.stage);
      }
      if (best == nullptr || better(c, *best)) best = &c;
    }
  }
  result.schedule = best->schedule;
  result.derivation = best->derivation;
  return result;
}

}  // namespace smallvalues
