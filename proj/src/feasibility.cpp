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

#include "pclone/feasibility.hpp"

#include <algorithm>
#include <cmath>

#include "pclone/errors.hpp"

namespace pclone {

namespace {

bool InUnitInterval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

RatePair::RatePair(double r1, double r2) : r1_(r1), r2_(r2) {
  if (!InUnitInterval(r1) || !InUnitInterval(r2)) {
    throw DomainError("success rates must lie in [0,1]");
  }
}

MachineSpec::MachineSpec(double eta_in, double eta_out) : eta_in_(eta_in), eta_out_(eta_out) {
  if (!InUnitInterval(eta_in) || !InUnitInterval(eta_out)) {
    throw DomainError("overlap magnitudes must lie in [0,1]");
  }
}

double two_state_slack(const MachineSpec& spec, const RatePair& rates) {
  return std::sqrt((1.0 - rates.r1()) * (1.0 - rates.r2())) - spec.eta_in() +
         spec.eta_out() * std::sqrt(rates.r1() * rates.r2());
}

bool two_state_feasible(const MachineSpec& spec, const RatePair& rates) {
  return two_state_slack(spec, rates) >= -kBoundarySlack;
}

bool theorem1_feasible(const HermitianMatrix& input_gram, const HermitianMatrix& output_gram,
                       const HermitianMatrix& probe_gram, std::span<const double> rates) {
  const Eigen::Index n = input_gram.size();
  if (output_gram.size() != n || probe_gram.size() != n ||
      static_cast<Eigen::Index>(rates.size()) != n) {
    throw DomainError("Gram matrices and rate list must share one size");
  }
  Vector sqrt_rates(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = rates[static_cast<std::size_t>(i)];
    if (!InUnitInterval(r)) {
      throw DomainError("success rates must lie in [0,1]");
    }
    sqrt_rates(i) = std::sqrt(r);
  }
  const Matrix y = output_gram.entries().cwiseProduct(probe_gram.entries());
  const Matrix m = input_gram.entries() - sqrt_rates.asDiagonal() * y * sqrt_rates.asDiagonal();
  const Matrix hermitian_part = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -kPsdTolerance;
}

double average_rate_bound(const MachineSpec& spec) {
  if (spec.eta_out() == 1.0) {
    if (spec.eta_in() == 1.0) return 1.0;
    throw SingularBoundError("average-rate bound is singular at eta_out = 1");
  }
  return std::min(1.0, (1.0 - spec.eta_in()) / (1.0 - spec.eta_out()));
}

}  // namespace pclone
