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

// Maximum success probabilities of cloning one of two originals into m
// copies when two auxiliary systems carry supplementary information.
//
// Parties: Alice holds the original (overlap alpha), Bob the first auxiliary
// system (overlap beta), Victor the second (overlap gamma).
//
//   Scenario I    one party runs a single machine on all three systems.
//   Scenario II   Victor makes m-1 copies; on failure Alice and Bob make m.
//   Scenario III  Bob and Victor make m-1 copies; on failure Alice makes m.
//
// Which closed forms apply depends on the regime of (alpha, beta, gamma, m),
// see classify_regime().

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "pclone/feasibility.hpp"

namespace pclone {

inline constexpr double kRegimeSnap = 1e-12;
inline constexpr double kPriorTolerance = 1e-12;

struct Priors {
  double p1 = 0.5;
  double p2 = 0.5;

  bool equal() const;
};

/// Throws DomainError unless both priors are >= 0 and sum to 1.
void validate(const Priors& priors);

class CloningProblem {
 public:
  /// Throws DomainError on overlaps outside [0,1], m < 2 or invalid priors.
  CloningProblem(double alpha, double beta, double gamma, int m, Priors priors = {});

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  int m() const { return m_; }
  const Priors& priors() const { return priors_; }

 private:
  double alpha_;
  double beta_;
  double gamma_;
  int m_;
  Priors priors_;
};

enum class RegimeLabel {
  kAllUnit,    // beta or gamma <= alpha^{m-1}: every scenario reaches 1
  kStrictGap,  // alpha^{2m-2} < beta*gamma <= alpha^{m-1}: I = III = 1 > II
  kWeakGap,    // alpha^{m-1} < beta*gamma: I = III >= II, closed forms below 1
};

std::string_view to_string(RegimeLabel label);

struct Regime {
  RegimeLabel label;
  double alpha_pow_m_minus_1;
  double alpha_pow_2m_minus_2;
  double beta_gamma;
};

Regime classify_regime(const CloningProblem& p);

enum class Scenario { kI, kII, kIII };

std::string_view to_string(Scenario scenario);

/// One machine of a protocol: overlaps it maps between and copies it emits.
struct Stage {
  MachineSpec spec;
  int copies;
};

/// Machines of a scenario in execution order; the second runs only when
/// the first announces failure.
std::vector<Stage> scenario_stages(Scenario scenario, const CloningProblem& p);

/// Scenario II with the roles swapped: Alice and Bob make m copies first,
/// Victor makes m copies alone on failure.
std::vector<Stage> scenario_II_reversed_stages(const CloningProblem& p);

/// (1 - alpha beta gamma) / (1 - alpha^m) in the weak-gap regime, 1 otherwise.
/// Throws UnsupportedPriorsError for unequal priors in the weak-gap regime.
double rmax_scenario_I(const CloningProblem& p);

/// Weak gap: [(1-g)(ab - a^m) + (1-ab)(1-a^{m-1})] / [(1-a^m)(1-a^{m-1})].
/// Strict gap: composition of the two clamped stage bounds. This is an upper
/// bound for the protocol, not an established maximum.
double rmax_scenario_II(const CloningProblem& p);

double rmax_scenario_III(const CloningProblem& p);

double rmax(Scenario scenario, const CloningProblem& p);

/// True where rmax_scenario_II() reports the clamped-stage composition
/// rather than a proven maximum.
bool scenario_II_is_composition_bound(const CloningProblem& p);

/// Closed-form rmax_I - rmax_II in the weak-gap regime:
/// (1-gamma) alpha^m (1-beta) / [(1-alpha^m)(1-alpha^{m-1})].
double scenario_gap_I_II(const CloningProblem& p);

/// Equal-rate optimum of each stage: the average-rate bound on both inputs,
/// or (1,1) when the stage does not need to shrink the overlap.
std::vector<RatePair> optimal_stage_rates(Scenario scenario, const CloningProblem& p);

/// Sum_i P_i (first_i + (1 - first_i) second_i).
double compose_two_step(const RatePair& first, const RatePair& second, const Priors& priors);

/// Overlap of the single auxiliary system replacing two: beta * gamma.
double merge_auxiliaries(double beta, double gamma);

/// Maximum with a single auxiliary system of the given overlap.
double rmax_single_auxiliary(double alpha, double overlap, int m);

struct SaturationStep {
  double effective_overlap;
  double r_max;
  bool saturated;
};

/// Merges auxiliaries one at a time and records the single-auxiliary
/// maximum after each merge. Saturates at 1 once the running product drops
/// to alpha^{m-1}. Throws DomainError on an empty sequence.
std::vector<SaturationStep> cyclic_saturation(double alpha, int m,
                                              const std::vector<double>& aux_overlaps);

struct ScenarioReport {
  Regime regime;
  std::array<double, 3> closed_form_max{};
  bool scenario_II_composition_bound = false;
  std::optional<std::array<double, 3>> oracle_max = std::nullopt;
  std::optional<std::array<double, 3>> empirical_rate = std::nullopt;
};

/// Closed-form part of a report. Throws UnsupportedPriorsError like rmax_*.
ScenarioReport closed_form_report(const CloningProblem& p);

}  // namespace pclone
