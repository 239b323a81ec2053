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

// Existence conditions for probabilistic cloning machines.
//
// A machine maps |phi_i>|blank>|P0> to
//   sqrt(r_i) |psi_i>^{(x)m} |chi> |P_i>  +  sqrt(1 - r_i) |failure_i>
// with the failure branch orthogonal to the success probes. For n inputs it
// exists iff X - sqrt(G) Y sqrt(G) is positive semidefinite for some choice
// of probe overlaps, where X is the input Gram matrix, Y the output Gram
// matrix times the probe Gram matrix and G = diag(r). For two inputs this
// reduces to a scalar inequality in the overlap magnitudes.

#pragma once

#include <span>

#include "pclone/quantum_core.hpp"

namespace pclone {

inline constexpr double kBoundarySlack = 1e-12;
inline constexpr double kPsdTolerance = 1e-9;

/// Per-input success probabilities of one machine.
class RatePair {
 public:
  /// Throws DomainError unless both rates lie in [0,1].
  RatePair(double r1, double r2);

  double r1() const { return r1_; }
  double r2() const { return r2_; }

  friend bool operator==(const RatePair&, const RatePair&) = default;

 private:
  double r1_;
  double r2_;
};

/// Overlap magnitudes a two-state machine must map between.
class MachineSpec {
 public:
  /// Throws DomainError unless both overlaps lie in [0,1].
  MachineSpec(double eta_in, double eta_out);

  double eta_in() const { return eta_in_; }
  double eta_out() const { return eta_out_; }

 private:
  double eta_in_;
  double eta_out_;
};

/// sqrt((1-r1)(1-r2)) - eta_in + eta_out*sqrt(r1 r2); nonnegative exactly on
/// the feasible region.
double two_state_slack(const MachineSpec& spec, const RatePair& rates);

/// two_state_slack >= -kBoundarySlack.
bool two_state_feasible(const MachineSpec& spec, const RatePair& rates);

/// PSD test of X - sqrt(G) (Y o P) sqrt(G), where `output_gram` holds the
/// clone overlaps <psi_i|psi_j>^m, `probe_gram` the success-probe overlaps,
/// "o" is the entrywise product and G = diag(rates). Accepts when the
/// smallest eigenvalue is >= -kPsdTolerance.
bool theorem1_feasible(const HermitianMatrix& input_gram, const HermitianMatrix& output_gram,
                       const HermitianMatrix& probe_gram, std::span<const double> rates);

/// Upper bound on (r1 + r2)/2, min(1, (1-eta_in)/(1-eta_out)). Equality
/// needs r1 == r2. Throws SingularBoundError if eta_out == 1 > eta_in.
double average_rate_bound(const MachineSpec& spec);

}  // namespace pclone
