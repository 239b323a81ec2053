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

#include "pclone/quantum_core.hpp"

#include <array>
#include <cmath>
#include <string>

#include "pclone/errors.hpp"

namespace pclone {

namespace {

Matrix StackColumns(std::span<const PureState> states) {
  Matrix m(states.front().dim(), static_cast<Eigen::Index>(states.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    m.col(j) = states[static_cast<std::size_t>(j)].amplitudes();
  }
  return m;
}

// Gram-Schmidt with one reorthogonalization pass ("twice is enough").
// Returns the orthonormalized columns of `a`; `a` must have full column rank.
Matrix Orthonormalize(const Matrix& a) {
  Matrix q(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    Vector v = a.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) {
        v -= q.col(i) * q.col(i).dot(v);
      }
    }
    q.col(j) = v / v.norm();
  }
  return q;
}

// Extends the orthonormal columns of `basis` to an orthonormal basis of the
// full space by sweeping the standard basis vectors in coordinate order.
// A coordinate is accepted when its residual after projection exceeds the
// current threshold; thresholds are relaxed only if a sweep comes up short.
Matrix CompleteBasis(const Matrix& basis) {
  const Eigen::Index dim = basis.rows();
  Matrix full(dim, dim);
  full.leftCols(basis.cols()) = basis;
  Eigen::Index filled = basis.cols();
  std::vector<bool> used(static_cast<std::size_t>(dim), false);

  constexpr std::array<double, 3> kThresholds = {0.5, 1e-2, 1e-6};
  for (double threshold : kThresholds) {
    for (Eigen::Index e = 0; e < dim && filled < dim; ++e) {
      if (used[static_cast<std::size_t>(e)]) continue;
      Vector v = Vector::Unit(dim, e);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index i = 0; i < filled; ++i) {
          v -= full.col(i) * full.col(i).dot(v);
        }
      }
      const double norm = v.norm();
      if (norm < threshold) continue;
      full.col(filled++) = v / norm;
      used[static_cast<std::size_t>(e)] = true;
    }
    if (filled == dim) break;
  }
  if (filled != dim) {
    throw InternalConsistencyError("basis completion failed");
  }
  return full;
}

}  // namespace

PureState PureState::FromAmplitudes(Vector amplitudes) {
  if (amplitudes.size() < 1) {
    throw DomainError("state dimension must be at least 1");
  }
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > kStateNormTolerance) {
    throw DomainError("state is not normalized (norm " + std::to_string(norm) + ")");
  }
  return PureState(std::move(amplitudes));
}

PureState PureState::Basis(Eigen::Index dim, Eigen::Index index) {
  if (dim < 1 || index < 0 || index >= dim) {
    throw DomainError("basis index out of range");
  }
  return PureState(Vector::Unit(dim, index));
}

PureState PureState::PaddedTo(Eigen::Index dim) const {
  if (dim < this->dim()) {
    throw DomainError("cannot pad a state into a smaller space");
  }
  Vector padded = Vector::Zero(dim);
  padded.head(this->dim()) = amplitudes_;
  return PureState(std::move(padded));
}

HermitianMatrix HermitianMatrix::FromEntries(Matrix entries) {
  if (entries.rows() != entries.cols()) {
    throw DomainError("Hermitian matrix must be square");
  }
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw DomainError("matrix is not Hermitian");
  }
  return HermitianMatrix(std::move(entries));
}

double HermitianMatrix::MinEigenvalue() const {
  const Matrix hermitian_part = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

UnitaryMatrix UnitaryMatrix::FromEntries(Matrix entries) {
  if (entries.rows() != entries.cols()) {
    throw DomainError("unitary matrix must be square");
  }
  UnitaryMatrix u(std::move(entries));
  if (u.UnitarityResidual() > kUnitaryTolerance) {
    throw DomainError("matrix is not unitary");
  }
  return u;
}

double UnitaryMatrix::UnitarityResidual() const {
  return OperatorNorm(entries_.adjoint() * entries_ - Matrix::Identity(dim(), dim()));
}

Vector UnitaryMatrix::Apply(const PureState& state) const {
  if (state.dim() != dim()) {
    throw DomainError("state and unitary dimensions differ");
  }
  return entries_ * state.amplitudes();
}

double OperatorNorm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

std::pair<PureState, PureState> make_state_pair(double overlap, Eigen::Index dim) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) {
    throw DomainError("overlap must lie in [0,1]");
  }
  if (dim < 2) {
    throw DomainError("state pair needs dimension >= 2");
  }
  Vector b = Vector::Zero(dim);
  b(0) = overlap;
  b(1) = std::sqrt(1.0 - overlap * overlap);
  return {PureState::Basis(dim, 0), PureState::FromAmplitudes(std::move(b))};
}

Complex inner_product(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("inner product of states with different dimensions");
  }
  return a.amplitudes().dot(b.amplitudes());
}

PureState tensor(const PureState& a, const PureState& b) {
  Vector out(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    out.segment(i * b.dim(), b.dim()) = a.amplitudes()(i) * b.amplitudes();
  }
  return PureState::FromAmplitudes(std::move(out));
}

PureState tensor_power(const PureState& a, int copies) {
  if (copies < 1) {
    throw DomainError("tensor power needs at least one copy");
  }
  PureState out = a;
  for (int k = 1; k < copies; ++k) out = tensor(out, a);
  return out;
}

HermitianMatrix gram_matrix(std::span<const PureState> states) {
  if (states.empty()) {
    throw DomainError("Gram matrix of an empty list");
  }
  const auto n = static_cast<Eigen::Index>(states.size());
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = inner_product(states[static_cast<std::size_t>(i)],
                              states[static_cast<std::size_t>(j)]);
    }
  }
  return HermitianMatrix::FromEntries(std::move(g));
}

UnitaryMatrix complete_to_unitary(std::span<const PureState> inputs,
                                  std::span<const PureState> outputs) {
  if (inputs.empty() || inputs.size() != outputs.size()) {
    throw DomainError("inputs and outputs must be nonempty lists of equal length");
  }
  const Eigen::Index dim = inputs.front().dim();
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    if (inputs[j].dim() != dim || outputs[j].dim() != dim) {
      throw DomainError("all prescribed states must share one dimension");
    }
  }
  if (static_cast<Eigen::Index>(inputs.size()) > dim) {
    throw DegeneracyError("more prescribed inputs than dimensions");
  }

  const Matrix in = StackColumns(inputs);
  const Matrix out = StackColumns(outputs);

  Eigen::JacobiSVD<Matrix> svd(in);
  if (svd.singularValues().minCoeff() < kDegeneracyThreshold) {
    throw DegeneracyError("prescribed inputs are linearly dependent");
  }
  const double gram_gap = (in.adjoint() * in - out.adjoint() * out).cwiseAbs().maxCoeff();
  if (gram_gap > kGramMatchTolerance) {
    throw InfeasibleMapError("input and output Gram matrices differ by " +
                             std::to_string(gram_gap));
  }

  // in = Q_in R and out = Q_out R' with R ~ R' (Cholesky factors of the same
  // Gram matrix), so W V^dagger sends each input to its output.
  const Matrix v = CompleteBasis(Orthonormalize(in));
  const Matrix w = CompleteBasis(Orthonormalize(out));
  return UnitaryMatrix::FromEntries(w * v.adjoint());
}

}  // namespace pclone
