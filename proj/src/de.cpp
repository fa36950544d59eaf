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

#include "percept/de.hpp"

#include <algorithm>

#include "percept/errors.hpp"

namespace percept::attacks {

DeResult de_optimize(
    const std::function<double(const std::vector<double>&)>& fitness,
    const std::vector<std::pair<double, double>>& bounds,
    const DeParams& params, Rng& rng, const std::function<bool()>& stop) {
  if (params.population < 4)
    throw ParamError("de: population must be >= 4");
  if (params.max_generations < 1)
    throw ParamError("de: max_generations must be >= 1");
  if (bounds.empty()) throw ParamError("de: empty bounds");
  for (const auto& [lo, hi] : bounds) {
    if (!(lo <= hi)) throw ParamError("de: degenerate bounds");
  }

  const std::size_t dim = bounds.size();
  const int np = params.population;

  DeResult res;
  std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
  std::vector<double> fit(np);

  for (int i = 0; i < np; ++i) {
    for (std::size_t d = 0; d < dim; ++d)
      pop[i][d] = rng.uniform(bounds[d].first, bounds[d].second);
    fit[i] = fitness(pop[i]);
    ++res.evals;
    if (fit[i] < res.best_fitness || i == 0) {
      res.best_fitness = fit[i];
      res.best = pop[i];
    }
    if (stop && stop()) {
      res.stopped_early = true;
      res.trace.push_back(res.best_fitness);
      return res;
    }
  }

  std::vector<double> trial(dim);
  for (int gen = 0; gen < params.max_generations; ++gen) {
    for (int i = 0; i < np; ++i) {
      // three distinct partners, none equal to i
      int r1, r2, r3;
      do {
        r1 = static_cast<int>(rng.uniform_int(np));
      } while (r1 == i);
      do {
        r2 = static_cast<int>(rng.uniform_int(np));
      } while (r2 == i || r2 == r1);
      do {
        r3 = static_cast<int>(rng.uniform_int(np));
      } while (r3 == i || r3 == r1 || r3 == r2);

      const std::size_t jrand = rng.uniform_int(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        if (d == jrand || rng.uniform() < params.crossover) {
          double v = pop[r1][d] + params.weight * (pop[r2][d] - pop[r3][d]);
          trial[d] = std::clamp(v, bounds[d].first, bounds[d].second);
        } else {
          trial[d] = pop[i][d];
        }
      }

      const double f = fitness(trial);
      ++res.evals;
      if (f <= fit[i]) {
        pop[i] = trial;
        fit[i] = f;
        if (f < res.best_fitness) {
          res.best_fitness = f;
          res.best = pop[i];
        }
      }
      if (stop && stop()) {
        res.stopped_early = true;
        res.trace.push_back(res.best_fitness);
        return res;
      }
    }
    res.trace.push_back(res.best_fitness);
  }
  return res;
}

}  // namespace percept::attacks
