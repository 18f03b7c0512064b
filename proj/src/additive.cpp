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

#include "smallvalues/additive.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <thread>

#include "smallvalues/errors.hpp"

namespace smallvalues {
namespace {

struct Half {
  std::vector<int> vars;
  std::vector<double> value;
  std::vector<double> size;
  // Mixed-radix code of t restricted to vars.
  std::vector<std::uint64_t> code;
};

std::vector<long> decode(std::uint64_t code, std::size_t len, long box) {
  const std::uint64_t radix = 2 * box + 1;
  std::vector<long> t(len);
  for (std::size_t i = 0; i < len; ++i) {
    t[i] = static_cast<long>(code % radix) - box;
    code /= radix;
  }
  return t;
}

Half build_half(const std::vector<double>& lambdas, std::vector<int> vars, long box,
                bool skip_zero) {
  Half h;
  h.vars = std::move(vars);
  const std::uint64_t radix = 2 * box + 1;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < h.vars.size(); ++i) count *= radix;
  struct Entry {
    double value, size;
    std::uint64_t code;
  };
  std::vector<Entry> entries;
  entries.reserve(count);
  std::vector<double> cubes(radix);
  for (long v = -box; v <= box; ++v) {
    cubes[v + box] = static_cast<double>(v) * v * v;
  }
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t rest = code;
    double value = 0, size = 0;
    for (int var : h.vars) {
      const double term = lambdas[var] * cubes[rest % radix];
      value += term;
      size += std::fabs(term);
      rest /= radix;
    }
    if (skip_zero && size == 0) continue;
    entries.push_back({value, size, code});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.value < b.value || (a.value == b.value && a.code < b.code);
  });
  for (const auto& e : entries) {
    h.value.push_back(e.value);
    h.size.push_back(e.size);
    h.code.push_back(e.code);
  }
  return h;
}

// Sparse table over sizes answering argmin queries on index ranges.
class RangeMin {
 public:
  explicit RangeMin(const std::vector<double>& v) : v_(v) {
    const std::size_t n = v.size();
    table_.push_back(std::vector<std::uint32_t>(n));
    std::iota(table_[0].begin(), table_[0].end(), 0u);
    for (std::size_t w = 1; (std::size_t{1} << w) <= n; ++w) {
      const auto& prev = table_.back();
      std::vector<std::uint32_t> cur(n - (std::size_t{1} << w) + 1);
      for (std::size_t i = 0; i < cur.size(); ++i) {
        cur[i] = better(prev[i], prev[i + (std::size_t{1} << (w - 1))]);
      }
      table_.push_back(std::move(cur));
    }
  }
  // [lo, hi), non-empty.
  std::uint32_t argmin(std::size_t lo, std::size_t hi) const {
    const int w = std::bit_width(hi - lo) - 1;
    return better(table_[w][lo], table_[w][hi - (std::size_t{1} << w)]);
  }

 private:
  std::uint32_t better(std::uint32_t a, std::uint32_t b) const {
    return v_[b] < v_[a] || (v_[b] == v_[a] && b < a) ? b : a;
  }
  const std::vector<double>& v_;
  std::vector<std::vector<std::uint32_t>> table_;
};

Rational exact_size(const AdditiveInstance& inst, const std::vector<long>& t) {
  Rational s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    s += abs(inst.lambdas[i] * Rational(t[i] * t[i] * t[i]));
  }
  return s;
}

Rational exact_value(const AdditiveInstance& inst, const std::vector<long>& t) {
  Rational s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    s += inst.lambdas[i] * Rational(t[i] * t[i] * t[i]);
  }
  return s;
}

}  // namespace

void AdditiveInstance::validate() const {
  if (lambdas.size() != 8 && lambdas.size() != 9) {
    throw DomainError("an additive instance needs 8 or 9 coefficients, got " +
                      std::to_string(lambdas.size()));
  }
  for (const auto& l : lambdas) {
    if (abs(l) < Rational(1)) throw DomainError("coefficient " + l.to_string() + " has |lambda| < 1");
  }
  if (theta.sign() < 0) throw DomainError("theta must be non-negative");
}

Rational AdditiveInstance::reference_exponent() const {
  return (lambdas.size() == 9 ? Rational(1) : Rational(15, 8)) + theta;
}

bool check_witness(const AdditiveInstance& inst, const Rational& tol,
                   const std::vector<long>& t) {
  if (t.size() != inst.lambdas.size()) return false;
  return abs(exact_value(inst, t)) < tol && exact_size(inst, t).sign() > 0;
}

std::optional<AdditiveWitness> additive_search(const AdditiveInstance& inst,
                                               const Rational& tol, long box,
                                               std::size_t max_half_entries) {
  inst.validate();
  if (tol.sign() <= 0) throw DomainError("tol must be positive");
  if (box < 1) throw DomainError("box must be at least 1");
  const std::size_t n = inst.lambdas.size();
  const std::size_t nl = n / 2;
  const double radix = 2.0 * box + 1;
  if (std::pow(radix, static_cast<double>(n - nl)) > static_cast<double>(max_half_entries)) {
    throw DomainError("box " + std::to_string(box) + " exceeds the table limit");
  }

  std::vector<double> lam;
  double scale = 0;
  for (const auto& l : inst.lambdas) {
    lam.push_back(l.to_double());
    scale += std::fabs(lam.back());
  }
  scale *= static_cast<double>(box) * box * box;
  const double slack = 1e-9 * std::max(scale, 1.0);
  const double tol_d = tol.to_double();

  std::vector<int> left_vars(nl), right_vars(n - nl);
  std::iota(left_vars.begin(), left_vars.end(), 0);
  std::iota(right_vars.begin(), right_vars.end(), static_cast<int>(nl));
  Half left, right;
  std::thread worker([&] { left = build_half(lam, left_vars, box, false); });
  right = build_half(lam, right_vars, box, true);
  worker.join();
  const RangeMin rmq(right.size);

  auto assemble = [&](std::uint64_t lcode, std::optional<std::uint64_t> rcode) {
    std::vector<long> t = decode(lcode, nl, box);
    const std::vector<long> r =
        rcode ? decode(*rcode, n - nl, box) : std::vector<long>(n - nl, 0);
    t.insert(t.end(), r.begin(), r.end());
    return t;
  };

  std::optional<std::vector<long>> best_t;
  Rational best_size;
  double best_size_d = 0;
  auto offer = [&](const std::vector<long>& t, double approx_size) {
    if (best_t && approx_size > best_size_d + slack) return;
    if (!check_witness(inst, tol, t)) return;
    const Rational sz = exact_size(inst, t);
    if (!best_t || sz < best_size || (sz == best_size && t < *best_t)) {
      best_t = t;
      best_size = sz;
      best_size_d = sz.to_double();
    }
  };

  for (std::size_t i = 0; i < left.value.size(); ++i) {
    const double a = left.value[i];
    if (left.size[i] > 0 && std::fabs(a) < tol_d + slack) {
      offer(assemble(left.code[i], std::nullopt), left.size[i]);
    }
    const auto lo = std::lower_bound(right.value.begin(), right.value.end(),
                                     -tol_d - a - slack) - right.value.begin();
    const auto hi = std::upper_bound(right.value.begin(), right.value.end(),
                                     tol_d - a + slack) - right.value.begin();
    if (lo >= hi) continue;
    const std::uint32_t j = rmq.argmin(lo, hi);
    const double approx = left.size[i] + right.size[j];
    if (best_t && approx > best_size_d + slack) continue;
    const std::vector<long> t = assemble(left.code[i], right.code[j]);
    if (check_witness(inst, tol, t)) {
      offer(t, approx);
      const bool near_edge = std::fabs(std::fabs(a + right.value[j]) - tol_d) <= slack;
      if (!near_edge) continue;
    }
    // The float minimum sits at the tolerance edge: settle the window exactly.
    for (auto k = lo; k < hi; ++k) {
      offer(assemble(left.code[i], right.code[k]), left.size[i] + right.size[k]);
    }
  }

  if (!best_t) return std::nullopt;
  AdditiveWitness w;
  w.t = *best_t;
  w.value = exact_value(inst, w.t);
  w.size = best_size;
  w.box = box;
  Rational prod(1);
  for (const auto& l : inst.lambdas) prod *= abs(l);
  if (prod > Rational(1)) {
    w.empirical_exponent = std::log(w.size.to_double()) / std::log(prod.to_double());
  }
  w.reference_exponent = inst.reference_exponent().to_double();
  return w;
}

std::optional<AdditiveWitness> additive_search_doubling(const AdditiveInstance& inst,
                                                        const Rational& tol,
                                                        long box_cap,
                                                        std::size_t max_half_entries) {
  if (box_cap < 1) throw DomainError("box must be at least 1");
  const std::size_t half = inst.lambdas.size() - inst.lambdas.size() / 2;
  for (long box = 1;; box = std::min(2 * box, box_cap)) {
    if (std::pow(2.0 * box + 1, static_cast<double>(half)) >
        static_cast<double>(max_half_entries)) {
      return std::nullopt;
    }
    if (auto w = additive_search(inst, tol, box, max_half_entries)) return w;
    if (box == box_cap) return std::nullopt;
  }
}

AdditiveInstance random_additive_instance(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> hundredths(100, 200);
  AdditiveInstance inst;
  for (int i = 0; i < n; ++i) inst.lambdas.emplace_back(hundredths(rng), 100);
  inst.validate();
  return inst;
}

}  // namespace smallvalues
