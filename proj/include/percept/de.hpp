/* Copyright 2026 The Percept Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef PERCEPT_DE_HPP_
#define PERCEPT_DE_HPP_

#include <functional>
#include <utility>
#include <vector>

#include "percept/rng.hpp"

namespace percept::attacks {

struct DeParams {
  int population = 200;
  double weight = 0.5;     // differential weight F
  double crossover = 0.9;  // binomial crossover rate CR
  int max_generations = 100;
};

struct DeResult {
  std::vector<double> best;
  double best_fitness = 0.0;
  std::vector<double> trace;  // best-so-far per generation, non-increasing
  long evals = 0;
  bool stopped_early = false;
};

// DE/rand/1/bin minimizer over box bounds. Deterministic per rng seed.
// stop, when given, is polled after every candidate evaluation and ends the
// search as soon as it returns true.
DeResult de_optimize(
    const std::function<double(const std::vector<double>&)>& fitness,
    const std::vector<std::pair<double, double>>& bounds,
    const DeParams& params, Rng& rng,
    const std::function<bool()>& stop = nullptr);

}  // namespace percept::attacks

#endif  // PERCEPT_DE_HPP_
