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

#include "smallvalues/config.hpp"

#include "smallvalues/errors.hpp"

namespace smallvalues {

void RunConfig::validate() const {
  if (epsilon.sign() <= 0) throw ConfigError("epsilon must be positive");
  if (budget < 1) throw ConfigError("budget must be positive");
  if (granularity.sign() <= 0) throw ConfigError("granularity must be positive");
  if (margin.sign() <= 0) throw ConfigError("margin must be positive");
  if (iteration_cap < 1) throw ConfigError("iteration cap must be positive");
}

OptimizerOptions RunConfig::optimizer_options() const {
  OptimizerOptions o;
  o.budget = budget;
  o.seed = seed;
  o.threads = threads;
  return o;
}

}  // namespace smallvalues
