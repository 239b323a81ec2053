// Copyright 2026 The pclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pclone/oracle.hpp"

#include <optional>
#include <vector>

#include "pclone/errors.hpp"

namespace pclone {

namespace {

// For each r1 lattice index, the largest r2 index that is feasible, or -1.
//
// Both stage objectives have nonnegative weight on each rate, so for a fixed
// r1 a larger feasible r2 never loses; the two-step optimum over the full
// lattice is attained on this frontier.
std::vector<int> FeasibleFrontier(const MachineSpec& spec, const GridConfig& grid) {
  const int n = grid.resolution();
  std::vector<int> top(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    for (int j = n - 1; j >= 0; --j) {
      if (two_state_feasible(spec, RatePair(grid.point(i), grid.point(j)))) {
        top[static_cast<std::size_t>(i)] = j;
        break;
      }
    }
  }
  return top;
}

}  // namespace

GridConfig::GridConfig(int resolution, double tolerance)
    : resolution_(resolution), tolerance_(tolerance) {
  if (resolution < 2) {
    throw DomainError("grid resolution must be at least 2");
  }
  if (!(tolerance > 0.0) || tolerance < 2.0 / resolution) {
    throw DomainError("grid tolerance must be positive and at least 2/resolution");
  }
}

SingleMachineOptimum optimize_single_machine(const MachineSpec& spec, const Priors& priors,
                                             const GridConfig& grid) {
  validate(priors);
  const int n = grid.resolution();
  std::optional<SingleMachineOptimum> best;
  for (int i = 0; i < n; ++i) {
    const double r1 = grid.point(i);
    for (int j = 0; j < n; ++j) {
      const RatePair rates(r1, grid.point(j));
      if (!two_state_feasible(spec, rates)) continue;
      const double value = priors.p1 * rates.r1() + priors.p2 * rates.r2();
      if (!best || value > best->value) best = SingleMachineOptimum{rates, value};
    }
  }
  if (!best) {
    throw InternalConsistencyError("no feasible lattice point (origin is always feasible)");
  }
  return *best;
}

double optimize_two_step(const MachineSpec& first_spec, const MachineSpec& second_spec,
                         const Priors& priors, const GridConfig& grid) {
  validate(priors);
  const int n = grid.resolution();
  const std::vector<int> first = FeasibleFrontier(first_spec, grid);
  const std::vector<int> second = FeasibleFrontier(second_spec, grid);

  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    const int top = first[static_cast<std::size_t>(i)];
    if (top < 0) continue;
    const double a1 = grid.point(i);
    const double a2 = grid.point(top);
    const double w1 = priors.p1 * (1.0 - a1);
    const double w2 = priors.p2 * (1.0 - a2);
    double inner = 0.0;
    for (int k = 0; k < n; ++k) {
      const int b2 = second[static_cast<std::size_t>(k)];
      if (b2 < 0) continue;
      const double value = w1 * grid.point(k) + w2 * grid.point(b2);
      if (value > inner) inner = value;
    }
    const double total = priors.p1 * a1 + priors.p2 * a2 + inner;
    if (total > best) best = total;
  }
  if (best < 0.0) {
    throw InternalConsistencyError("no feasible lattice point (origin is always feasible)");
  }
  return best;
}

double oracle_max(Scenario scenario, const CloningProblem& p, const GridConfig& grid) {
  const std::vector<Stage> stages = scenario_stages(scenario, p);
  if (stages.size() == 1) {
    return optimize_single_machine(stages[0].spec, p.priors(), grid).value;
  }
  return optimize_two_step(stages[0].spec, stages[1].spec, p.priors(), grid);
}

bool ordering_advantage_check(const CloningProblem& p, const GridConfig& grid) {
  const std::vector<Stage> forward = scenario_stages(Scenario::kII, p);
  const std::vector<Stage> reversed = scenario_II_reversed_stages(p);
  const double forward_max =
      optimize_two_step(forward[0].spec, forward[1].spec, p.priors(), grid);
  const double reversed_max =
      optimize_two_step(reversed[0].spec, reversed[1].spec, p.priors(), grid);
  return forward_max >= reversed_max - grid.tolerance();
}

}  // namespace pclone
