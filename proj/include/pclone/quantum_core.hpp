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

// Small dense complex linear algebra for pure states: inner and tensor
// products, Gram matrices, and extension of an isometric partial map to a
// full unitary.

#pragma once

#include <complex>
#include <span>
#include <utility>

#include <Eigen/Dense>

namespace pclone {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kStateNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kGramMatchTolerance = 1e-9;
inline constexpr double kDegeneracyThreshold = 1e-10;

/// Normalized complex amplitude vector.
class PureState {
 public:
  /// Throws DomainError if `amplitudes` is empty or not unit-norm within
  /// kStateNormTolerance.
  static PureState FromAmplitudes(Vector amplitudes);

  /// Computational basis vector e_index in a `dim`-dimensional space.
  static PureState Basis(Eigen::Index dim, Eigen::Index index);

  const Vector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }

  /// Same state embedded in a larger space with zero amplitudes appended.
  PureState PaddedTo(Eigen::Index dim) const;

 private:
  explicit PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {}

  Vector amplitudes_;
};

class HermitianMatrix {
 public:
  /// Throws DomainError unless `entries` is square and Hermitian within
  /// kHermitianTolerance.
  static HermitianMatrix FromEntries(Matrix entries);

  const Matrix& entries() const { return entries_; }
  Eigen::Index size() const { return entries_.rows(); }

  /// Smallest eigenvalue of the Hermitian part.
  double MinEigenvalue() const;

 private:
  explicit HermitianMatrix(Matrix entries) : entries_(std::move(entries)) {}

  Matrix entries_;
};

class UnitaryMatrix {
 public:
  /// Throws DomainError unless `entries` is square with
  /// ||U^dagger U - I|| <= kUnitaryTolerance (operator norm).
  static UnitaryMatrix FromEntries(Matrix entries);

  const Matrix& entries() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }

  /// Operator norm of U^dagger U - I.
  double UnitarityResidual() const;

  /// U|state>. The result is renormalization-free: unitarity keeps it
  /// unit-norm within kUnitaryTolerance.
  Vector Apply(const PureState& state) const;

 private:
  explicit UnitaryMatrix(Matrix entries) : entries_(std::move(entries)) {}

  Matrix entries_;
};

/// Largest singular value.
double OperatorNorm(const Matrix& m);

/// Real pair (e1, overlap*e1 + sqrt(1-overlap^2)*e2) in `dim` dimensions.
/// Throws DomainError if overlap is outside [0,1] or dim < 2.
std::pair<PureState, PureState> make_state_pair(double overlap, Eigen::Index dim);

/// <a|b>, antilinear in the first argument.
Complex inner_product(const PureState& a, const PureState& b);

/// Kronecker product a (x) b.
PureState tensor(const PureState& a, const PureState& b);

/// a^{(x) copies}; copies >= 1.
PureState tensor_power(const PureState& a, int copies);

/// Entry (i,j) = <states_i|states_j>.
HermitianMatrix gram_matrix(std::span<const PureState> states);

/// Unitary U with U|inputs_j> = |outputs_j>. The orthogonal complement of
/// each side is completed from the standard basis in coordinate order, so
/// the result is a deterministic function of the arguments.
///
/// Throws DegeneracyError when the inputs are linearly dependent (smallest
/// singular value below kDegeneracyThreshold) and InfeasibleMapError when
/// the two Gram matrices differ by more than kGramMatchTolerance.
UnitaryMatrix complete_to_unitary(std::span<const PureState> inputs,
                                  std::span<const PureState> outputs);

}  // namespace pclone
