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

#ifndef SMALLVALUES_CONFIG_HPP_
#define SMALLVALUES_CONFIG_HPP_

#include <cstdint>

#include "smallvalues/rational.hpp"
#include "smallvalues/schedule.hpp"

namespace smallvalues {

struct RunConfig {
  Rational epsilon = pow10_inverse(13);
  long budget = 20000;
  std::uint64_t seed = 0;
  Rational granularity = pow10_inverse(4);
  Rational margin = pow10_inverse(6);
  int iteration_cap = 50;
  // Not serialized; 0 defers to SMALLVALUES_THREADS.
  unsigned threads = 0;

  // Throws ConfigError unless every field is positive.
  void validate() const;
  OptimizerOptions optimizer_options() const;

  friend bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.epsilon == b.epsilon && a.budget == b.budget && a.seed == b.seed &&
           a.granularity == b.granularity && a.margin == b.margin &&
           a.iteration_cap == b.iteration_cap;
  }
};

}  // namespace smallvalues

#endif  // SMALLVALUES_CONFIG_HPP_
