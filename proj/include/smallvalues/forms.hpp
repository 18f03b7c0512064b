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

#ifndef SMALLVALUES_FORMS_HPP_
#define SMALLVALUES_FORMS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "smallvalues/rational.hpp"

namespace smallvalues {

using RationalVector = std::vector<Rational>;
using IntVector = std::vector<long>;

// F(x) = sum over i <= j <= k of c_ijk x_i x_j x_k, indices 0-based.
class CubicForm {
 public:
  using Index = std::array<int, 3>;

  CubicForm() = default;
  explicit CubicForm(int dimension);

  int dimension() const { return dimension_; }
  // Indices are sorted before use; zero coefficients are dropped.
  void set(int i, int j, int k, const Rational& c);
  void add(int i, int j, int k, const Rational& c);
  Rational coefficient(int i, int j, int k) const;
  const std::map<Index, Rational>& coefficients() const { return coeffs_; }

  Rational operator()(const RationalVector& x) const;
  Rational operator()(const IntVector& x) const;
  // |F|: the largest absolute coefficient.
  Rational max_abs_coefficient() const;

  friend bool operator==(const CubicForm&, const CubicForm&) = default;

 private:
  static Index sorted(int i, int j, int k);
  void check(int i, int j, int k) const;

  int dimension_ = 0;
  std::map<Index, Rational> coeffs_;
};

// Nonzero integer vectors x_1..x_n in Z^s with max-norm at most bound.
struct VectorTuple {
  std::vector<IntVector> vectors;
  long bound = 0;

  int size() const { return static_cast<int>(vectors.size()); }
  int dimension() const;
  // Throws DomainError on zero vectors, ragged dimensions or a vector
  // exceeding the bound.
  void validate() const;
  static VectorTuple from(std::vector<IntVector> vectors);
};

// c_1 x_{p1} = c_2 x_{p2} + ... + c_n x_{pn} where p is `order`; c_2 > 0 and
// c_2 >= |c_i| for every i.
struct DependencyWitness {
  std::vector<long> c;
  std::vector<int> order;

  // From a relation sum d_i x_i = 0: position 2 gets an index of largest
  // |d_i| (lowest index on ties), position 1 the lowest remaining index,
  // the rest follow in increasing order.
  static DependencyWitness normalize(const std::vector<long>& relation);
  bool holds(const VectorTuple& tuple) const;
  // The tuple reordered by `order`.
  VectorTuple apply(const VectorTuple& tuple) const;
};

// Symmetric trilinear form with T(x, x, x) = F(x).
Rational trilinear_eval(const CubicForm& F, const RationalVector& x,
                        const RationalVector& y, const RationalVector& z);

// G(u) = F(u_1 x_1 + ... + u_n x_n) as a form in n variables.
CubicForm expand_along(const CubicForm& F, const VectorTuple& tuple);

// Largest absolute off-diagonal coefficient of expand_along(F, tuple).
Rational quasi_diag_error(const CubicForm& F, const VectorTuple& tuple);
// Number of monomials u_a u_b u_c, a <= b <= c, not all equal.
long off_diagonal_monomials(int n);

struct TrickResidual {
  Rational lhs;
  Rational rhs;
  // |F(x_2)| <= bound, from the off-diagonal maximum and the three points.
  Rational bound;
  Rational f_x2;
};

// The tuple is reordered by the witness. lhs = 6 c_2^3 F(x_2) is computed
// directly; rhs = R(0, c_2, .., c_n) + R(c_1, c_2, 0, ..) - R(0, 2c_2, c_3, ..)
// uses the off-diagonal part R of the expansion.
TrickResidual dependency_trick_residual(const CubicForm& F, const VectorTuple& tuple,
                                   const DependencyWitness& witness);

struct GeneratorOptions {
  long value_bound = 100;
  long denominator_bound = 100;
  long vector_bound = 5;
  long relation_bound = 3;
};

CubicForm random_form(std::mt19937_64& rng, int dimension,
                      const GeneratorOptions& opts = {});
VectorTuple random_tuple(std::mt19937_64& rng, int n, int dimension,
                         const GeneratorOptions& opts = {});
RationalVector random_rational_vector(std::mt19937_64& rng, int dimension,
                                      const GeneratorOptions& opts = {});

struct PlantedInstance {
  VectorTuple tuple;
  std::vector<long> relation;
};
// n >= 2 vectors with one random integer relation among them.
PlantedInstance random_dependent_tuple(std::mt19937_64& rng, int n, int dimension,
                                       const GeneratorOptions& opts = {});

struct ExpandReport {
  int instances = 0;
  int evaluations = 0;
  int mismatches = 0;
  int diagonal_mismatches = 0;
  std::vector<std::string> lines;
};
// `count` evaluations of expand_along against direct substitution.
ExpandReport lab_expand(std::uint64_t seed, int dimension, int n, int count);

struct TrickReport {
  int count = 0;
  int exact = 0;
  int bound_violations = 0;
  std::vector<std::string> lines;
};
TrickReport lab_trick(std::uint64_t seed, int n, int dimension, int count);

}  // namespace smallvalues

#endif  // SMALLVALUES_FORMS_HPP_
