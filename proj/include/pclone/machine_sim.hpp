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

// Explicit unitaries for two-state probabilistic cloning machines and a
// Monte Carlo driver for the success/failure measurement.
//
// Output space layout (dimension S*P + 2):
//
//   [ success block: clones (x) probe, S*P coordinates | failure block: 2 ]
//
// S is the dimension of |psi>^{(x)m} (the memory register is one-dimensional)
// and P is the success-probe dimension. P is 1 unless the requested rates
// need distinct success probes, see build_machine().

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pclone/feasibility.hpp"
#include "pclone/protocols.hpp"
#include "pclone/quantum_core.hpp"

namespace pclone {

inline constexpr double kRateAgreementTolerance = 1e-10;
inline constexpr double kFidelityTolerance = 1e-9;

struct MachineRealization {
  UnitaryMatrix unitary;
  /// Composite inputs with overlap eta_in, padded to the output dimension.
  std::array<PureState, 2> input_states;
  /// Diagonal projector onto the success block.
  HermitianMatrix success_projector;
  /// Clones (x) success probe, embedded in the output space.
  std::array<PureState, 2> target_success_states;
  RatePair rates;
  /// Overlap of the two failure-branch states (c); 0 if a branch is empty.
  double failure_overlap;
  /// Overlap of the two success probes; 1 means a shared probe.
  double probe_overlap;

  Eigen::Index success_dim() const;
  /// <input_i| U^dagger Pi U |input_i>, i in {0, 1}.
  double success_probability(int input) const;
  /// |<target_i| Pi U input_i>|^2 / success_probability(i); 1 when the
  /// success branch is empty.
  double success_fidelity(int input) const;
};

/// Builds a unitary with
///   U |in_i> = sqrt(r_i) |target_i> + sqrt(1 - r_i) |fail_i>
/// where the targets are `output_pair` tensored with a success probe and the
/// failure states live in a two-dimensional block orthogonal to the success
/// block. Matching <in_1|in_2> = eta_in fixes the failure overlap
///   c = (eta_in - sqrt(r1 r2) eta_out) / sqrt((1 - r1)(1 - r2)).
/// When c would fall below -1 the success probes are split instead
/// (overlap p < 1) with c = -1; the feasibility inequality guarantees p <= 1.
///
/// Throws FeasibilityError if the rates are infeasible for
/// (eta_in, |<out_1|out_2>|), InternalConsistencyError if a derived overlap
/// leaves [-1, 1] beyond tolerance.
MachineRealization build_machine(double eta_in, const std::array<PureState, 2>& output_pair,
                                 const RatePair& rates);

struct SimulationResult {
  std::int64_t shots = 0;
  std::array<std::int64_t, 2> trials_per_input{};
  std::array<std::int64_t, 2> successes_per_input{};
  double empirical_rate = 0.0;
  /// Mean fidelity of post-selected outputs with their targets; 1 when no
  /// shot succeeded.
  double mean_success_fidelity = 1.0;
  std::uint64_t seed = 0;
};

/// Uniform double in [0, 1) that depends only on (seed, stream, counter).
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

/// Feeds input `which_input` (1 or 2) through the machine `shots` times and
/// samples the success measurement. Throws DomainError if shots < 1.
SimulationResult run_machine(const MachineRealization& machine, int which_input,
                             std::uint64_t rng_seed, std::int64_t shots);

/// Machines of a scenario at the given stage rates, in execution order.
/// Clone outputs are built from a real state pair with overlap alpha.
std::vector<MachineRealization> build_scenario_machines(Scenario scenario,
                                                        const CloningProblem& p,
                                                        const std::vector<RatePair>& stage_rates);

/// Weighted success rate the stage rates should produce.
double analytic_scenario_rate(Scenario scenario, const std::vector<RatePair>& stage_rates,
                              const Priors& priors);

/// Samples the input from the priors each shot, runs the first machine and,
/// on failure, the second. Throws FeasibilityError on infeasible stage rates
/// and DomainError if shots < 1 or the rate count does not match the stages.
SimulationResult simulate_scenario(Scenario scenario, const CloningProblem& p,
                                   const std::vector<RatePair>& stage_rates, std::int64_t shots,
                                   std::uint64_t seed);

}  // namespace pclone
