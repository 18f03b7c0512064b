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

#include "smallvalues/forms.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "smallvalues/errors.hpp"

namespace smallvalues {
namespace {

RationalVector to_rational(const IntVector& v) {
  RationalVector out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

void check_dim(const CubicForm& F, std::size_t d) {
  if (static_cast<int>(d) != F.dimension()) {
    throw DomainError("vector of dimension " + std::to_string(d) +
                      " for a form in " + std::to_string(F.dimension()) +
                      " variables");
  }
}

int multiplicity(const CubicForm::Index& idx) {
  if (idx[0] == idx[2]) return 1;
  if (idx[0] == idx[1] || idx[1] == idx[2]) return 3;
  return 6;
}

bool is_diagonal(const CubicForm::Index& idx) { return idx[0] == idx[2]; }

Rational random_rational(std::mt19937_64& rng, const GeneratorOptions& o) {
  std::uniform_int_distribution<long> num(-o.value_bound, o.value_bound);
  std::uniform_int_distribution<long> den(1, o.denominator_bound);
  return Rational(num(rng), den(rng));
}

IntVector random_nonzero(std::mt19937_64& rng, int dimension, long bound) {
  std::uniform_int_distribution<long> e(-bound, bound);
  IntVector v(dimension);
  do {
    for (long& x : v) x = e(rng);
  } while (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; }));
  return v;
}

Rational cube(const Rational& x) { return x * x * x; }

}  // namespace

CubicForm::CubicForm(int dimension) : dimension_(dimension) {
  if (dimension < 1) throw DomainError("form dimension must be positive");
}

CubicForm::Index CubicForm::sorted(int i, int j, int k) {
  Index idx{i, j, k};
  std::sort(idx.begin(), idx.end());
  return idx;
}

void CubicForm::check(int i, int j, int k) const {
  for (int v : {i, j, k}) {
    if (v < 0 || v >= dimension_) {
      throw DomainError("index " + std::to_string(v) + " outside 0.." +
                        std::to_string(dimension_ - 1));
    }
  }
}

void CubicForm::set(int i, int j, int k, const Rational& c) {
  check(i, j, k);
  const Index idx = sorted(i, j, k);
  if (c.sign() == 0) {
    coeffs_.erase(idx);
  } else {
    coeffs_[idx] = c;
  }
}

void CubicForm::add(int i, int j, int k, const Rational& c) {
  set(i, j, k, coefficient(i, j, k) + c);
}

Rational CubicForm::coefficient(int i, int j, int k) const {
  check(i, j, k);
  const auto it = coeffs_.find(sorted(i, j, k));
  return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational CubicForm::operator()(const RationalVector& x) const {
  check_dim(*this, x.size());
  Rational sum;
  for (const auto& [idx, c] : coeffs_) sum += c * x[idx[0]] * x[idx[1]] * x[idx[2]];
  return sum;
}

Rational CubicForm::operator()(const IntVector& x) const {
  return (*this)(to_rational(x));
}

Rational CubicForm::max_abs_coefficient() const {
  Rational best;
  for (const auto& [idx, c] : coeffs_) best = std::max(best, abs(c));
  return best;
}

int VectorTuple::dimension() const {
  return vectors.empty() ? 0 : static_cast<int>(vectors.front().size());
}

void VectorTuple::validate() const {
  if (vectors.empty()) throw DomainError("empty vector tuple");
  const std::size_t d = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != d) throw DomainError("vectors of different dimension");
    if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) {
      throw DomainError("zero vector in tuple");
    }
    for (long x : v) {
      if (std::labs(x) > bound) throw DomainError("vector exceeds the size bound");
    }
  }
}

VectorTuple VectorTuple::from(std::vector<IntVector> vectors) {
  VectorTuple t;
  t.vectors = std::move(vectors);
  for (const auto& v : t.vectors) {
    for (long x : v) t.bound = std::max(t.bound, std::labs(x));
  }
  t.validate();
  return t;
}

DependencyWitness DependencyWitness::normalize(const std::vector<long>& d) {
  const int n = static_cast<int>(d.size());
  if (n < 2) throw DomainError("a dependency needs at least two vectors");
  int top = 0;
  for (int i = 1; i < n; ++i) {
    if (std::labs(d[i]) > std::labs(d[top])) top = i;
  }
  if (d[top] == 0) throw DomainError("dependency coefficients are all zero");
  DependencyWitness w;
  const int first = top == 0 ? 1 : 0;
  w.order = {first, top};
  for (int i = 0; i < n; ++i) {
    if (i != first && i != top) w.order.push_back(i);
  }
  w.c.resize(n);
  w.c[0] = d[w.order[0]];
  for (int k = 1; k < n; ++k) w.c[k] = -d[w.order[k]];
  if (w.c[1] < 0) {
    for (long& x : w.c) x = -x;
  }
  return w;
}

bool DependencyWitness::holds(const VectorTuple& tuple) const {
  if (static_cast<int>(c.size()) != tuple.size() || order.size() != c.size()) {
    return false;
  }
  const int dim = tuple.dimension();
  for (int j = 0; j < dim; ++j) {
    long rhs = 0;
    for (std::size_t k = 1; k < c.size(); ++k) rhs += c[k] * tuple.vectors[order[k]][j];
    if (c[0] * tuple.vectors[order[0]][j] != rhs) return false;
  }
  return true;
}

VectorTuple DependencyWitness::apply(const VectorTuple& tuple) const {
  VectorTuple out;
  out.bound = tuple.bound;
  for (int p : order) out.vectors.push_back(tuple.vectors.at(p));
  return out;
}

Rational trilinear_eval(const CubicForm& F, const RationalVector& x,
                        const RationalVector& y, const RationalVector& z) {
  check_dim(F, x.size());
  check_dim(F, y.size());
  check_dim(F, z.size());
  static constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                       {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  Rational sum;
  for (const auto& [idx, c] : F.coefficients()) {
    Rational term;
    for (const auto& p : kPerms) term += x[idx[p[0]]] * y[idx[p[1]]] * z[idx[p[2]]];
    sum += c * term;
  }
  return sum / 6;
}

CubicForm expand_along(const CubicForm& F, const VectorTuple& tuple) {
  tuple.validate();
  check_dim(F, tuple.dimension());
  const int n = tuple.size();
  std::vector<RationalVector> xs;
  for (const auto& v : tuple.vectors) xs.push_back(to_rational(v));
  CubicForm G(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      for (int c = b; c < n; ++c) {
        const Rational t = trilinear_eval(F, xs[a], xs[b], xs[c]);
        G.set(a, b, c, t * multiplicity({a, b, c}));
      }
    }
  }
  return G;
}

Rational quasi_diag_error(const CubicForm& F, const VectorTuple& tuple) {
  const CubicForm G = expand_along(F, tuple);
  Rational best;
  for (const auto& [idx, c] : G.coefficients()) {
    if (!is_diagonal(idx)) best = std::max(best, abs(c));
  }
  return best;
}

long off_diagonal_monomials(int n) {
  return static_cast<long>(n) * (n + 1) * (n + 2) / 6 - n;
}

TrickResidual dependency_trick_residual(const CubicForm& F, const VectorTuple& tuple,
                                   const DependencyWitness& witness) {
  if (!witness.holds(tuple)) throw DomainError("witness relation does not hold");
  const long c2 = witness.c.at(1);
  if (c2 <= 0) throw DomainError("witness needs c_2 > 0");
  const VectorTuple ordered = witness.apply(tuple);
  const int n = ordered.size();

  const CubicForm G = expand_along(F, ordered);
  CubicForm R(n);
  for (const auto& [idx, c] : G.coefficients()) {
    if (!is_diagonal(idx)) R.set(idx[0], idx[1], idx[2], c);
  }

  RationalVector p1(n), p2(n), p3(n);
  for (int k = 1; k < n; ++k) {
    p1[k] = Rational(witness.c[k]);
    p3[k] = Rational(witness.c[k]);
  }
  p2[0] = Rational(witness.c[0]);
  p2[1] = Rational(c2);
  p3[1] = Rational(2 * c2);

  TrickResidual out;
  out.f_x2 = F(ordered.vectors[1]);
  out.lhs = Rational(6) * cube(Rational(c2)) * out.f_x2;
  out.rhs = R(p1) + R(p2) - R(p3);

  auto norm = [](const RationalVector& v) {
    Rational m;
    for (const auto& x : v) m = std::max(m, abs(x));
    return m;
  };
  const Rational eta = quasi_diag_error(F, ordered);
  out.bound = Rational(off_diagonal_monomials(n)) * eta *
              (cube(norm(p1)) + cube(norm(p2)) + cube(norm(p3))) /
              (Rational(6) * cube(Rational(c2)));
  return out;
}

CubicForm random_form(std::mt19937_64& rng, int dimension,
                      const GeneratorOptions& opts) {
  CubicForm F(dimension);
  for (int i = 0; i < dimension; ++i) {
    for (int j = i; j < dimension; ++j) {
      for (int k = j; k < dimension; ++k) F.set(i, j, k, random_rational(rng, opts));
    }
  }
  return F;
}

VectorTuple random_tuple(std::mt19937_64& rng, int n, int dimension,
                         const GeneratorOptions& opts) {
  std::vector<IntVector> vs;
  for (int i = 0; i < n; ++i) vs.push_back(random_nonzero(rng, dimension, opts.vector_bound));
  return VectorTuple::from(std::move(vs));
}

RationalVector random_rational_vector(std::mt19937_64& rng, int dimension,
                                      const GeneratorOptions& opts) {
  RationalVector v;
  for (int i = 0; i < dimension; ++i) v.push_back(random_rational(rng, opts));
  return v;
}

PlantedInstance random_dependent_tuple(std::mt19937_64& rng, int n, int dimension,
                                       const GeneratorOptions& opts) {
  if (n < 2) throw DomainError("a planted dependency needs n >= 2");
  std::uniform_int_distribution<long> coef(-opts.relation_bound, opts.relation_bound);
  while (true) {
    std::vector<IntVector> vs;
    for (int i = 0; i + 1 < n; ++i) {
      vs.push_back(random_nonzero(rng, dimension, opts.vector_bound));
    }
    std::vector<long> d(n);
    IntVector last(dimension, 0);
    for (int i = 0; i + 1 < n; ++i) {
      d[i] = coef(rng);
      for (int j = 0; j < dimension; ++j) last[j] += d[i] * vs[i][j];
    }
    if (std::all_of(last.begin(), last.end(), [](long x) { return x == 0; })) continue;
    vs.push_back(last);
    d[n - 1] = -1;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    PlantedInstance inst;
    std::vector<IntVector> shuffled(n);
    inst.relation.resize(n);
    for (int i = 0; i < n; ++i) {
      shuffled[perm[i]] = vs[i];
      inst.relation[perm[i]] = d[i];
    }
    inst.tuple = VectorTuple::from(std::move(shuffled));
    return inst;
  }
}

ExpandReport lab_expand(std::uint64_t seed, int dimension, int n, int count) {
  if (dimension < 1 || n < 1 || count < 1) {
    throw DomainError("dimension, n and count must be positive");
  }
  std::mt19937_64 rng(seed);
  ExpandReport rep;
  const CubicForm F = random_form(rng, dimension);
  const VectorTuple tuple = random_tuple(rng, n, dimension);
  const CubicForm G = expand_along(F, tuple);
  rep.instances = 1;
  for (int i = 0; i < n; ++i) {
    if (G.coefficient(i, i, i) != F(tuple.vectors[i])) ++rep.diagonal_mismatches;
  }
  for (int e = 0; e < count; ++e) {
    const RationalVector u = random_rational_vector(rng, n);
    RationalVector x(dimension);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < dimension; ++j) x[j] += u[i] * Rational(tuple.vectors[i][j]);
    }
    ++rep.evaluations;
    if (G(u) != F(x)) ++rep.mismatches;
  }
  rep.lines.push_back("form: " + std::to_string(dimension) + " variables, " +
                      std::to_string(F.coefficients().size()) + " monomials, |F| = " +
                      F.max_abs_coefficient().to_string());
  rep.lines.push_back("tuple: " + std::to_string(n) + " vectors, N = " +
                      std::to_string(tuple.bound));
  rep.lines.push_back("off-diagonal maximum: " + quasi_diag_error(F, tuple).to_string());
  rep.lines.push_back("diagonal mismatches: " + std::to_string(rep.diagonal_mismatches));
  rep.lines.push_back(std::to_string(rep.evaluations) + " evaluations, " +
                      std::to_string(rep.mismatches) + " mismatches");
  return rep;
}

TrickReport lab_trick(std::uint64_t seed, int n, int dimension, int count) {
  if (n < 2 || dimension < 1 || count < 1) {
    throw DomainError("need n >= 2, dimension >= 1 and count >= 1");
  }
  std::mt19937_64 rng(seed);
  TrickReport rep;
  for (int i = 0; i < count; ++i) {
    const CubicForm F = random_form(rng, dimension);
    const PlantedInstance inst = random_dependent_tuple(rng, n, dimension);
    const DependencyWitness w = DependencyWitness::normalize(inst.relation);
    const TrickResidual res = dependency_trick_residual(F, inst.tuple, w);
    ++rep.count;
    if (res.lhs == res.rhs) {
      ++rep.exact;
    } else {
      rep.lines.push_back("instance " + std::to_string(i) + ": lhs " +
                          res.lhs.to_string() + " != rhs " + res.rhs.to_string());
    }
    if (abs(res.f_x2) > res.bound) ++rep.bound_violations;
  }
  rep.lines.push_back(std::to_string(rep.exact) + "/" + std::to_string(rep.count) +
                      " exact");
  rep.lines.push_back("bound violations: " + std::to_string(rep.bound_violations));
  return rep;
}

}  // namespace smallvalues
