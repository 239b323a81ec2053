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

#include "pclone/protocols.hpp"

#include <algorithm>
#include <cmath>

#include "pclone/errors.hpp"

namespace pclone {

namespace {

bool InUnitInterval(double x) { return x >= 0.0 && x <= 1.0; }

double Clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// a <= b with a snap band so exact boundary points do not flip on rounding.
bool SnapLeq(double a, double b) { return a <= b + kRegimeSnap; }

void RequireEqualPriors(const CloningProblem& p) {
  if (!p.priors().equal()) {
    throw UnsupportedPriorsError(
        "closed forms in the weak-gap regime require equal priors");
  }
}

}  // namespace

bool Priors::equal() const { return std::abs(p1 - p2) <= kPriorTolerance; }

void validate(const Priors& priors) {
  if (!(priors.p1 >= 0.0) || !(priors.p2 >= 0.0) ||
      std::abs(priors.p1 + priors.p2 - 1.0) > kPriorTolerance) {
    throw DomainError("priors must be nonnegative and sum to 1");
  }
}

CloningProblem::CloningProblem(double alpha, double beta, double gamma, int m, Priors priors)
    : alpha_(alpha), beta_(beta), gamma_(gamma), m_(m), priors_(priors) {
  if (!InUnitInterval(alpha) || !InUnitInterval(beta) || !InUnitInterval(gamma)) {
    throw DomainError("overlaps alpha, beta, gamma must lie in [0,1]");
  }
  if (m < 2) {
    throw DomainError("copy count m must be at least 2");
  }
  validate(priors);
}

std::string_view to_string(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::kAllUnit:
      return "ALL_UNIT";
    case RegimeLabel::kStrictGap:
      return "STRICT_GAP";
    case RegimeLabel::kWeakGap:
      return "WEAK_GAP";
  }
  return "?";
}

Regime classify_regime(const CloningProblem& p) {
  const double a_m1 = std::pow(p.alpha(), p.m() - 1);
  Regime r{RegimeLabel::kWeakGap, a_m1, a_m1 * a_m1, p.beta() * p.gamma()};
  if (SnapLeq(p.beta(), a_m1) || SnapLeq(p.gamma(), a_m1)) {
    r.label = RegimeLabel::kAllUnit;
  } else if (SnapLeq(r.beta_gamma, a_m1)) {
    // beta, gamma > alpha^{m-1} already forces beta*gamma > alpha^{2m-2}.
    r.label = RegimeLabel::kStrictGap;
  }
  return r;
}

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::kI:
      return "I";
    case Scenario::kII:
      return "II";
    case Scenario::kIII:
      return "III";
  }
  return "?";
}

std::vector<Stage> scenario_stages(Scenario scenario, const CloningProblem& p) {
  const double a = p.alpha();
  const int m = p.m();
  const double a_m = std::pow(a, m);
  const double a_m1 = std::pow(a, m - 1);
  switch (scenario) {
    case Scenario::kI:
      return {Stage{MachineSpec(a * p.beta() * p.gamma(), a_m), m}};
    case Scenario::kII:
      return {Stage{MachineSpec(p.gamma(), a_m1), m - 1},
              Stage{MachineSpec(a * p.beta(), a_m), m}};
    case Scenario::kIII:
      return {Stage{MachineSpec(p.beta() * p.gamma(), a_m1), m - 1},
              Stage{MachineSpec(a, a_m), m}};
  }
  return {};
}

std::vector<Stage> scenario_II_reversed_stages(const CloningProblem& p) {
  const double a_m = std::pow(p.alpha(), p.m());
  return {Stage{MachineSpec(p.alpha() * p.beta(), a_m), p.m()},
          Stage{MachineSpec(p.gamma(), a_m), p.m()}};
}

double rmax_scenario_I(const CloningProblem& p) {
  if (classify_regime(p).label != RegimeLabel::kWeakGap) return 1.0;
  RequireEqualPriors(p);
  const double a = p.alpha();
  return Clamp01((1.0 - a * p.beta() * p.gamma()) / (1.0 - std::pow(a, p.m())));
}

double rmax_scenario_II(const CloningProblem& p) {
  const RegimeLabel label = classify_regime(p).label;
  if (label == RegimeLabel::kAllUnit) return 1.0;
  const double a = p.alpha();
  const double a_m = std::pow(a, p.m());
  const double a_m1 = std::pow(a, p.m() - 1);
  if (label == RegimeLabel::kStrictGap) {
    const double victor = std::min(1.0, (1.0 - p.gamma()) / (1.0 - a_m1));
    const double alice_bob = std::min(1.0, (1.0 - a * p.beta()) / (1.0 - a_m));
    return Clamp01(victor + alice_bob - victor * alice_bob);
  }
  RequireEqualPriors(p);
  const double ab = a * p.beta();
  const double numerator = (1.0 - p.gamma()) * (ab - a_m) + (1.0 - ab) * (1.0 - a_m1);
  return Clamp01(numerator / ((1.0 - a_m) * (1.0 - a_m1)));
}

double rmax_scenario_III(const CloningProblem& p) {
  if (classify_regime(p).label != RegimeLabel::kWeakGap) return 1.0;
  RequireEqualPriors(p);
  const double a = p.alpha();
  return Clamp01((1.0 - a * p.beta() * p.gamma()) / (1.0 - std::pow(a, p.m())));
}

double rmax(Scenario scenario, const CloningProblem& p) {
  switch (scenario) {
    case Scenario::kI:
      return rmax_scenario_I(p);
    case Scenario::kII:
      return rmax_scenario_II(p);
    case Scenario::kIII:
      return rmax_scenario_III(p);
  }
  return 0.0;
}

bool scenario_II_is_composition_bound(const CloningProblem& p) {
  return classify_regime(p).label == RegimeLabel::kStrictGap;
}

double scenario_gap_I_II(const CloningProblem& p) {
  const double a = p.alpha();
  const double a_m = std::pow(a, p.m());
  const double a_m1 = std::pow(a, p.m() - 1);
  return (1.0 - p.gamma()) * a_m * (1.0 - p.beta()) / ((1.0 - a_m) * (1.0 - a_m1));
}

std::vector<RatePair> optimal_stage_rates(Scenario scenario, const CloningProblem& p) {
  std::vector<RatePair> rates;
  for (const Stage& stage : scenario_stages(scenario, p)) {
    const double r = stage.spec.eta_in() <= stage.spec.eta_out()
                         ? 1.0
                         : average_rate_bound(stage.spec);
    rates.emplace_back(r, r);
  }
  return rates;
}

double compose_two_step(const RatePair& first, const RatePair& second, const Priors& priors) {
  return priors.p1 * (first.r1() + (1.0 - first.r1()) * second.r1()) +
         priors.p2 * (first.r2() + (1.0 - first.r2()) * second.r2());
}

double merge_auxiliaries(double beta, double gamma) {
  if (!InUnitInterval(beta) || !InUnitInterval(gamma)) {
    throw DomainError("auxiliary overlaps must lie in [0,1]");
  }
  return beta * gamma;
}

double rmax_single_auxiliary(double alpha, double overlap, int m) {
  // A trivial second auxiliary (overlap 1) reduces Scenario III to the
  // single-helper two-step protocol.
  return rmax_scenario_III(CloningProblem(alpha, overlap, 1.0, m));
}

std::vector<SaturationStep> cyclic_saturation(double alpha, int m,
                                              const std::vector<double>& aux_overlaps) {
  if (aux_overlaps.empty()) {
    throw DomainError("cyclic saturation needs at least one auxiliary overlap");
  }
  if (!InUnitInterval(alpha) || m < 2) {
    throw DomainError("invalid alpha or copy count");
  }
  const double a_m1 = std::pow(alpha, m - 1);
  std::vector<SaturationStep> trace;
  trace.reserve(aux_overlaps.size());
  double product = 1.0;
  bool saturated = false;
  for (double overlap : aux_overlaps) {
    if (!InUnitInterval(overlap)) {
      throw DomainError("auxiliary overlaps must lie in [0,1]");
    }
    product *= overlap;
    saturated = saturated || SnapLeq(product, a_m1);
    const double r = saturated ? 1.0 : rmax_single_auxiliary(alpha, product, m);
    trace.push_back({product, r, saturated});
  }
  return trace;
}

ScenarioReport closed_form_report(const CloningProblem& p) {
  ScenarioReport report{.regime = classify_regime(p)};
  report.closed_form_max = {rmax_scenario_I(p), rmax_scenario_II(p), rmax_scenario_III(p)};
  report.scenario_II_composition_bound = scenario_II_is_composition_bound(p);
  return report;
}

}  // namespace pclone
