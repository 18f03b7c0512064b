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

#ifndef SMALLVALUES_ADDITIVE_HPP_
#define SMALLVALUES_ADDITIVE_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "smallvalues/rational.hpp"

namespace smallvalues {

// lambda_1 t_1^3 + ... + lambda_n t_n^3 with n in {8, 9} and |lambda_i| >= 1.
struct AdditiveInstance {
  std::vector<Rational> lambdas;
  Rational theta;

  void validate() const;
  // 1 + theta for nine variables, 15/8 + theta for eight.
  Rational reference_exponent() const;
};

struct AdditiveWitness {
  std::vector<long> t;
  Rational value;  // sum lambda_i t_i^3
  Rational size;   // sum |lambda_i t_i^3|
  long box = 0;
  // log(size) / log(prod |lambda_i|) when the product exceeds 1.
  std::optional<double> empirical_exponent;
  double reference_exponent = 0;
};

// Recomputes both sums from t: |value| < tol and size > 0.
bool check_witness(const AdditiveInstance& inst, const Rational& tol,
                   const std::vector<long>& t);

// Meet in the middle over |t_i| <= box. Returns the smallest size among
// witnesses with |value| < tol, or nothing. Throws DomainError when a half
// table would exceed max_half_entries.
std::optional<AdditiveWitness> additive_search(const AdditiveInstance& inst,
                                               const Rational& tol, long box,
                                               std::size_t max_half_entries = 1u << 22);

// Tries box = 1, 2, 4, ... up to box_cap (the cap itself is tried last).
// Stops early, returning nothing, once the tables would outgrow
// max_half_entries.
std::optional<AdditiveWitness> additive_search_doubling(
    const AdditiveInstance& inst, const Rational& tol, long box_cap,
    std::size_t max_half_entries = 1u << 22);

// Nine coefficients in [1, 2] with two decimals.
AdditiveInstance random_additive_instance(std::mt19937_64& rng, int n = 9);

}  // namespace smallvalues

#endif  // SMALLVALUES_ADDITIVE_HPP_
