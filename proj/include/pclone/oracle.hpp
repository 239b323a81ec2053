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

// Brute-force maximization of the weighted success rate over a uniform
// lattice of rate pairs, filtered by the two-state feasibility predicate.
// Used to check the closed forms independently of their derivation.

#pragma once

#include "pclone/feasibility.hpp"
#include "pclone/protocols.hpp"

namespace pclone {

inline constexpr int kDefaultGridResolution = 801;
inline constexpr double kDefaultGridTolerance = 5e-3;

class GridConfig {
 public:
  /// Throws DomainError unless resolution >= 2, tolerance > 0 and
  /// tolerance >= 2 / resolution.
  GridConfig(int resolution = kDefaultGridResolution, double tolerance = kDefaultGridTolerance);

  int resolution() const { return resolution_; }
  double tolerance() const { return tolerance_; }
  double step() const { return 1.0 / (resolution_ - 1); }
  double point(int index) const { return index * step(); }

 private:
  int resolution_;
  double tolerance_;
};

struct SingleMachineOptimum {
  RatePair rates;
  double value;
};

/// Exhaustive scan of the resolution x resolution lattice. Among equal
/// values the smallest r1, then the smallest r2, wins.
SingleMachineOptimum optimize_single_machine(const MachineSpec& spec, const Priors& priors,
                                             const GridConfig& grid);

/// Maximum over lattice points of both stages of
/// compose_two_step(first, second, priors).
double optimize_two_step(const MachineSpec& first_spec, const MachineSpec& second_spec,
                         const Priors& priors, const GridConfig& grid);

/// Oracle maximum of a scenario's protocol. Priors need not be equal.
double oracle_max(Scenario scenario, const CloningProblem& p, const GridConfig& grid);

/// True iff the Scenario II ordering with Victor first is at least as good
/// as the reversed ordering, up to the grid tolerance.
bool ordering_advantage_check(const CloningProblem& p, const GridConfig& grid);

}  // namespace pclone
