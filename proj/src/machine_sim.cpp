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

#include "pclone/machine_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pclone/errors.hpp"

namespace pclone {

namespace {

constexpr double kOverlapSlack = 1e-9;
constexpr double kIdenticalInputs = 1e-12;

// RNG stream ids.
constexpr std::uint64_t kInputStream = 0;
constexpr std::uint64_t kStageStreamBase = 1;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

PureState Embed(const Vector& block, Eigen::Index offset, Eigen::Index dim) {
  Vector v = Vector::Zero(dim);
  v.segment(offset, block.size()) = block;
  return PureState::FromAmplitudes(std::move(v));
}

struct BranchOverlaps {
  double failure;  // c
  double probe;    // p
};

// Solves sqrt(r1 r2) eta_out p + sqrt((1-r1)(1-r2)) c = eta_in for
// c, p in [-1, 1], preferring a shared success probe (p = 1).
BranchOverlaps SolveBranchOverlaps(double eta_in, double eta_out, const RatePair& rates) {
  const double fail = std::sqrt((1.0 - rates.r1()) * (1.0 - rates.r2()));
  const double succ = std::sqrt(rates.r1() * rates.r2()) * eta_out;

  if (fail > 0.0) {
    const double c = (eta_in - succ) / fail;
    if (c > 1.0) {
      if (eta_in - succ - fail > kOverlapSlack) {
        throw InternalConsistencyError("failure overlap " + std::to_string(c) + " exceeds 1");
      }
      return {1.0, 1.0};
    }
    if (c >= -1.0) return {c, 1.0};
    // Overlap too small to absorb in the failure block: split the probes.
    return {-1.0, std::min(1.0, (eta_in + fail) / succ)};
  }
  if (succ > eta_in) return {0.0, eta_in / succ};
  if (eta_in - succ > kOverlapSlack) {
    throw InternalConsistencyError("success overlap cannot reach the input overlap");
  }
  return {0.0, 1.0};
}

}  // namespace

Eigen::Index MachineRealization::success_dim() const {
  Eigen::Index n = 0;
  const Vector& diag = success_projector.entries().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (diag(i).real() > 0.5) ++n;
  }
  return n;
}

double MachineRealization::success_probability(int input) const {
  const Vector out = unitary.Apply(input_states.at(static_cast<std::size_t>(input)));
  const Vector projected = success_projector.entries() * out;
  return std::clamp(projected.squaredNorm(), 0.0, 1.0);
}

double MachineRealization::success_fidelity(int input) const {
  const auto i = static_cast<std::size_t>(input);
  const Vector out = unitary.Apply(input_states.at(i));
  const Vector projected = success_projector.entries() * out;
  const double weight = projected.squaredNorm();
  if (weight <= 0.0) return 1.0;
  return std::norm(target_success_states.at(i).amplitudes().dot(projected)) / weight;
}

MachineRealization build_machine(double eta_in, const std::array<PureState, 2>& output_pair,
                                 const RatePair& rates) {
  const PureState& clone1 = output_pair[0];
  const PureState& clone2 = output_pair[1];
  const Complex clone_overlap = inner_product(clone1, clone2);
  const double eta_out = std::min(1.0, std::abs(clone_overlap));
  const MachineSpec spec(eta_in, eta_out);
  if (!two_state_feasible(spec, rates)) {
    throw FeasibilityError("rates are infeasible for the requested overlaps");
  }

  const BranchOverlaps overlaps = SolveBranchOverlaps(eta_in, eta_out, rates);
  const Eigen::Index probe_dim = overlaps.probe < 1.0 ? 2 : 1;
  const Eigen::Index success_dim = clone1.dim() * probe_dim;
  const Eigen::Index dim = success_dim + 2;

  // Rotate the second clone's phase so the success overlap is real and
  // nonnegative; global phases do not change the physical target.
  const Complex phase =
      std::abs(clone_overlap) > 0.0 ? std::conj(clone_overlap / std::abs(clone_overlap)) : 1.0;

  Vector probe1 = Vector::Zero(probe_dim);
  Vector probe2 = Vector::Zero(probe_dim);
  probe1(0) = 1.0;
  probe2(0) = overlaps.probe;
  if (probe_dim == 2) probe2(1) = std::sqrt(1.0 - overlaps.probe * overlaps.probe);
  const PureState target1 =
      tensor(clone1, PureState::FromAmplitudes(std::move(probe1))).PaddedTo(dim);
  const PureState target2 = PureState::FromAmplitudes(
      phase * tensor(clone2, PureState::FromAmplitudes(std::move(probe2))).PaddedTo(dim).amplitudes());

  const double c = overlaps.failure;
  Vector fail1(2);
  Vector fail2(2);
  fail1 << 1.0, 0.0;
  fail2 << c, std::sqrt(std::max(0.0, 1.0 - c * c));

  const Vector out1 = std::sqrt(rates.r1()) * target1.amplitudes() +
                      std::sqrt(1.0 - rates.r1()) * Embed(fail1, success_dim, dim).amplitudes();
  const Vector out2 = std::sqrt(rates.r2()) * target2.amplitudes() +
                      std::sqrt(1.0 - rates.r2()) * Embed(fail2, success_dim, dim).amplitudes();

  const auto [in1, in2] = make_state_pair(eta_in, 2);
  std::array<PureState, 2> inputs = {in1.PaddedTo(dim), in2.PaddedTo(dim)};
  std::vector<PureState> outputs = {PureState::FromAmplitudes(out1 / out1.norm()),
                                    PureState::FromAmplitudes(out2 / out2.norm())};

  std::vector<PureState> prescribed_in(inputs.begin(), inputs.end());
  if (eta_in >= 1.0 - kIdenticalInputs) {
    // Identical inputs: the map is determined by one pair.
    if (std::abs(inner_product(outputs[0], outputs[1]) - 1.0) > kGramMatchTolerance) {
      throw InternalConsistencyError("identical inputs must map to identical outputs");
    }
    prescribed_in.pop_back();
    outputs.pop_back();
  }

  Vector projector = Vector::Zero(dim);
  projector.head(success_dim).setOnes();
  return MachineRealization{
      complete_to_unitary(prescribed_in, outputs),
      inputs,
      HermitianMatrix::FromEntries(projector.asDiagonal().toDenseMatrix()),
      {target1, target2},
      rates,
      c,
      overlaps.probe,
  };
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  std::uint64_t h = SplitMix64(seed);
  h = SplitMix64(h ^ SplitMix64(stream + 0x632be59bd9b4e019ULL));
  h = SplitMix64(h ^ counter);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

SimulationResult run_machine(const MachineRealization& machine, int which_input,
                             std::uint64_t rng_seed, std::int64_t shots) {
  if (shots < 1) throw DomainError("shots must be at least 1");
  if (which_input != 1 && which_input != 2) throw DomainError("input index must be 1 or 2");
  const int i = which_input - 1;
  const double p = machine.success_probability(i);
  const double fidelity = machine.success_fidelity(i);

  SimulationResult result;
  result.shots = shots;
  result.seed = rng_seed;
  std::int64_t successes = 0;
  for (std::int64_t shot = 0; shot < shots; ++shot) {
    if (counter_uniform(rng_seed, kStageStreamBase, static_cast<std::uint64_t>(shot)) < p) {
      ++successes;
    }
  }
  result.trials_per_input[static_cast<std::size_t>(i)] = shots;
  result.successes_per_input[static_cast<std::size_t>(i)] = successes;
  result.empirical_rate = static_cast<double>(successes) / static_cast<double>(shots);
  result.mean_success_fidelity = successes > 0 ? fidelity : 1.0;
  return result;
}

std::vector<MachineRealization> build_scenario_machines(Scenario scenario,
                                                        const CloningProblem& p,
                                                        const std::vector<RatePair>& stage_rates) {
  const std::vector<Stage> stages = scenario_stages(scenario, p);
  if (stage_rates.size() != stages.size()) {
    throw DomainError("scenario " + std::string(to_string(scenario)) + " needs " +
                      std::to_string(stages.size()) + " stage rate pairs");
  }
  const auto [psi1, psi2] = make_state_pair(p.alpha(), 2);
  std::vector<MachineRealization> machines;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const std::array<PureState, 2> clones = {tensor_power(psi1, stages[s].copies),
                                             tensor_power(psi2, stages[s].copies)};
    machines.push_back(build_machine(stages[s].spec.eta_in(), clones, stage_rates[s]));
  }
  return machines;
}

double analytic_scenario_rate(Scenario scenario, const std::vector<RatePair>& stage_rates,
                              const Priors& priors) {
  if (scenario == Scenario::kI) {
    if (stage_rates.size() != 1) throw DomainError("scenario I has one stage");
    return priors.p1 * stage_rates[0].r1() + priors.p2 * stage_rates[0].r2();
  }
  if (stage_rates.size() != 2) throw DomainError("two-step scenarios have two stages");
  return compose_two_step(stage_rates[0], stage_rates[1], priors);
}

SimulationResult simulate_scenario(Scenario scenario, const CloningProblem& p,
                                   const std::vector<RatePair>& stage_rates, std::int64_t shots,
                                   std::uint64_t seed) {
  if (shots < 1) throw DomainError("shots must be at least 1");
  const std::vector<MachineRealization> machines =
      build_scenario_machines(scenario, p, stage_rates);

  // Each machine's measurement statistics per input, computed once.
  std::vector<std::array<double, 2>> success(machines.size());
  std::vector<std::array<double, 2>> fidelity(machines.size());
  for (std::size_t s = 0; s < machines.size(); ++s) {
    for (int i = 0; i < 2; ++i) {
      success[s][static_cast<std::size_t>(i)] = machines[s].success_probability(i);
      fidelity[s][static_cast<std::size_t>(i)] = machines[s].success_fidelity(i);
    }
  }

  SimulationResult result;
  result.shots = shots;
  result.seed = seed;
  double fidelity_sum = 0.0;
  std::int64_t successes = 0;
  for (std::int64_t shot = 0; shot < shots; ++shot) {
    const auto counter = static_cast<std::uint64_t>(shot);
    const std::size_t input = counter_uniform(seed, kInputStream, counter) < p.priors().p1 ? 0 : 1;
    ++result.trials_per_input[input];
    for (std::size_t s = 0; s < machines.size(); ++s) {
      if (counter_uniform(seed, kStageStreamBase + s, counter) < success[s][input]) {
        ++result.successes_per_input[input];
        ++successes;
        fidelity_sum += fidelity[s][input];
        break;
      }
    }
  }
  result.empirical_rate = static_cast<double>(successes) / static_cast<double>(shots);
  result.mean_success_fidelity =
      successes > 0 ? fidelity_sum / static_cast<double>(successes) : 1.0;
  return result;
}

}  // namespace pclone
