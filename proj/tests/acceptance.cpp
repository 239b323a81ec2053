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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pclone/feasibility.hpp"
#include "pclone/machine_sim.hpp"
#include "pclone/oracle.hpp"
#include "pclone/protocols.hpp"
#include "test_util.hpp"

namespace pclone {
namespace {

using test::Uniform;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

std::vector<CloningProblem> WeakGapProblems() {
  std::mt19937_64 rng(20260101);
  std::vector<CloningProblem> problems;
  for (int t = 0; t < 100; ++t) problems.push_back(test::RandomWeakGapProblem(rng, 2 + t % 2));
  return problems;
}

Verdict ClosedFormVsOracleIandIII() {
  const GridConfig grid(801, 5e-3);
  double worst = 0.0;
  for (const CloningProblem& p : WeakGapProblems()) {
    for (Scenario s : {Scenario::kI, Scenario::kIII}) {
      worst = std::max(worst, std::abs(oracle_max(s, p, grid) - rmax(s, p)));
    }
  }
  return {worst <= 5e-3, Fmt("100 problems, max |oracle - closed form| = %.3e (tol 5e-3)", worst)};
}

Verdict ClosedFormVsOracleII() {
  const GridConfig grid(801, 5e-3);
  double worst = 0.0;
  for (const CloningProblem& p : WeakGapProblems()) {
    worst = std::max(worst, std::abs(oracle_max(Scenario::kII, p, grid) - rmax_scenario_II(p)));
  }
  return {worst <= 1e-2, Fmt("100 problems, max |oracle - closed form| = %.3e (tol 1e-2)", worst)};
}

Verdict Ordering() {
  std::vector<double> axis;
  for (int i = 0; i < 10; ++i) axis.push_back(0.1 + 0.85 * i / 9.0);
  std::vector<double> aux = axis;
  aux.push_back(1.0);
  int points = 0;
  int failures = 0;
  for (double a : axis) {
    for (double b : aux) {
      for (double g : aux) {
        const CloningProblem p(a, b, g, 2);
        const double r1 = rmax_scenario_I(p);
        const double r2 = rmax_scenario_II(p);
        const double r3 = rmax_scenario_III(p);
        bool ok = r1 == r3 && r1 >= r2 - 1e-12;
        if (b == 1.0 || g == 1.0) ok = ok && std::abs(r1 - r2) <= 1e-12;
        if (classify_regime(p).label == RegimeLabel::kAllUnit) {
          ok = ok && r1 == 1.0 && r2 == 1.0 && r3 == 1.0;
        }
        ++points;
        if (!ok) ++failures;
      }
    }
  }
  return {failures == 0, Fmt("%.0f points, %.0f violations", points, failures)};
}

Verdict WorkedInstance() {
  const CloningProblem p(0.6, 0.9, 0.8, 2);
  char buf[3][32];
  std::snprintf(buf[0], 32, "%.12g", rmax_scenario_I(p));
  std::snprintf(buf[1], 32, "%.12g", rmax_scenario_II(p));
  std::snprintf(buf[2], 32, "%.12g", rmax_scenario_III(p));
  const double gap = scenario_gap_I_II(p);
  const double direct = (1 - 0.8) * 0.36 * (1 - 0.9) / ((1 - 0.36) * (1 - 0.6));
  const double oracle_ii = oracle_max(Scenario::kII, p, GridConfig());
  const bool ok = std::string(buf[0]) == "0.8875" && std::string(buf[1]) == "0.859375" &&
                  std::string(buf[2]) == "0.8875" && std::abs(gap - 0.028125) <= 1e-12 &&
                  std::abs(direct - 0.028125) <= 1e-12 &&
                  std::abs(rmax_scenario_I(p) - rmax_scenario_II(p) - gap) <= 1e-12 &&
                  std::abs(oracle_ii - 0.859375) <= 1e-2;
  return {ok, "rI=" + std::string(buf[0]) + " rII=" + buf[1] + " rIII=" + buf[2] +
                  Fmt(" gap=%.12g oracle rII=%.6f", gap, oracle_ii)};
}

Verdict PredicateEquivalence() {
  // Tuples with eta_in >= eta_out, where a shared probe is optimal.
  std::mt19937_64 rng(555);
  HermitianMatrix ones = HermitianMatrix::FromEntries(Matrix::Ones(2, 2));
  auto pair = [](double overlap) {
    Matrix g(2, 2);
    g << 1.0, overlap, overlap, 1.0;
    return HermitianMatrix::FromEntries(g);
  };
  int disagreements = 0;
  for (int t = 0; t < 1000; ++t) {
    double eta_in = Uniform(rng, 0, 1);
    double eta_out = Uniform(rng, 0, 1);
    if (eta_in < eta_out) std::swap(eta_in, eta_out);
    const double r1 = Uniform(rng, 0, 1);
    const double r2 = Uniform(rng, 0, 1);
    const std::vector<double> rates = {r1, r2};
    if (two_state_feasible(MachineSpec(eta_in, eta_out), RatePair(r1, r2)) !=
        theorem1_feasible(pair(eta_in), pair(eta_out), ones, rates)) {
      ++disagreements;
    }
  }
  return {disagreements == 0, Fmt("1000 tuples, %.0f disagreements", disagreements)};
}

Verdict CopyMonotonicity() {
  std::mt19937_64 rng(666);
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const double alpha = Uniform(rng, 0, 1);
    const int m = 2 + static_cast<int>(rng() % 6);
    const RatePair r(Uniform(rng, 0, 1), Uniform(rng, 0, 1));
    const double eta_in = Uniform(rng, 0, 1);
    if (two_state_feasible(MachineSpec(eta_in, std::pow(alpha, m)), r) &&
        !two_state_feasible(MachineSpec(eta_in, std::pow(alpha, m - 1)), r)) {
      ++violations;
    }
  }
  return {violations == 0, Fmt("1000 tuples, %.0f violations", violations)};
}

Verdict MachineRealizations() {
  std::mt19937_64 rng(777);
  const std::int64_t shots = 100000;
  int built = 0;
  int structural_failures = 0;
  int in_band = 0;
  double worst_unitarity = 0.0;
  while (built < 50) {
    const double alpha = Uniform(rng, 0, 1);
    const int copies = 1 + static_cast<int>(rng() % 3);
    const double eta_in = Uniform(rng, 0, 0.999);
    const RatePair rates(Uniform(rng, 0, 1), Uniform(rng, 0, 1));
    if (!two_state_feasible(MachineSpec(eta_in, std::pow(alpha, copies)), rates)) continue;
    auto [a, b] = make_state_pair(alpha, 2);
    const MachineRealization machine =
        build_machine(eta_in, {tensor_power(a, copies), tensor_power(b, copies)}, rates);
    worst_unitarity = std::max(worst_unitarity, machine.unitary.UnitarityResidual());
    bool ok = machine.unitary.UnitarityResidual() <= 1e-10;
    const double r[2] = {rates.r1(), rates.r2()};
    for (int i = 0; i < 2; ++i) {
      ok = ok && std::abs(machine.success_probability(i) - r[i]) <= 1e-10;
      ok = ok && machine.success_fidelity(i) >= 1.0 - 1e-9;
    }
    if (!ok) ++structural_failures;
    const int input = 1 + built % 2;
    const double expected = r[input - 1];
    const SimulationResult sim =
        run_machine(machine, input, 1000 + static_cast<std::uint64_t>(built), shots);
    const double sigma = std::sqrt(expected * (1.0 - expected) / static_cast<double>(shots));
    if (std::abs(sim.empirical_rate - expected) <= 4.0 * sigma + 1e-12) ++in_band;
    ++built;
  }
  const bool pass = structural_failures == 0 && in_band >= 48;
  return {pass, Fmt("50 machines, %.0f structural failures, %.0f/50 within 4 sigma, "
                    "max unitarity residual %.2e",
                    structural_failures, in_band, worst_unitarity)};
}

Verdict Merging() {
  std::mt19937_64 rng(888);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double alpha = Uniform(rng, 0, 1);
    const double beta = Uniform(rng, 0, 1);
    const double gamma = Uniform(rng, 0, 1);
    const int m = 2 + static_cast<int>(rng() % 3);
    const double merged = rmax_single_auxiliary(alpha, merge_auxiliaries(beta, gamma), m);
    worst = std::max(worst, std::abs(merged - rmax_scenario_III(CloningProblem(alpha, beta, gamma, m))));
  }
  int trace_failures = 0;
  for (int t = 0; t < 100; ++t) {
    const double alpha = Uniform(rng, 0.05, 0.95);
    const int m = 2 + static_cast<int>(rng() % 3);
    std::vector<double> aux;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int k = 0; k < n; ++k) aux.push_back(Uniform(rng, 0.5, 1.0));
    const std::vector<SaturationStep> trace = cyclic_saturation(alpha, m, aux);
    const double floor = std::pow(alpha, m - 1);
    double product = 1.0;
    double previous = 0.0;
    bool ok = trace.size() == aux.size();
    for (std::size_t k = 0; ok && k < trace.size(); ++k) {
      product *= aux[k];
      ok = trace[k].r_max >= previous - 1e-15;
      if (product <= floor - kRegimeSnap) ok = ok && trace[k].r_max == 1.0 && trace[k].saturated;
      previous = trace[k].r_max;
    }
    if (!ok) ++trace_failures;
  }
  return {worst <= 1e-12 && trace_failures == 0,
          Fmt("100 problems, max |merged - two-auxiliary| = %.2e; %.0f bad saturation traces", worst,
              trace_failures)};
}

Verdict OrderingAdvantage() {
  std::mt19937_64 rng(999);
  const GridConfig grid(801, 1e-2);
  int failures = 0;
  for (int t = 0; t < 50; ++t) {
    const CloningProblem p(Uniform(rng, 0, 1), Uniform(rng, 0, 1), Uniform(rng, 0, 1),
                           2 + static_cast<int>(rng() % 2));
    if (!ordering_advantage_check(p, grid)) ++failures;
  }
  return {failures == 0, Fmt("50 problems, %.0f failures", failures)};
}

}  // namespace
}  // namespace pclone

int main() {
  using pclone::Verdict;
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"closed form vs oracle, scenarios I and III", pclone::ClosedFormVsOracleIandIII},
      {"closed form vs nested oracle, scenario II", pclone::ClosedFormVsOracleII},
      {"scenario ordering over a 10x10x10 sweep", pclone::Ordering},
      {"worked instance", pclone::WorkedInstance},
      {"two-state vs Gram-matrix feasibility", pclone::PredicateEquivalence},
      {"copy monotonicity", pclone::CopyMonotonicity},
      {"machine realization and Monte Carlo", pclone::MachineRealizations},
      {"auxiliary merging and saturation", pclone::Merging},
      {"ordering advantage in scenario II", pclone::OrderingAdvantage},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    const Verdict v = criteria[i].second();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %zu %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str(), seconds);
    if (!v.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
