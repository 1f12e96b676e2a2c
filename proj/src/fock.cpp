// Copyright 2026 the jumpback authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jumpback/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace jumpback {

namespace {

void require_finite(const Eigen::VectorXcd& v) {
  if (!v.allFinite()) {
    throw std::invalid_argument("fock vector has non-finite amplitudes");
  }
}

}  // namespace

FockVector::FockVector(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw std::invalid_argument("fock vector needs at least the vacuum level");
  }
  require_finite(amplitudes_);
}

FockVector::FockVector(int n_max, std::vector<std::complex<double>> amplitudes) {
  if (n_max < 0) {
    throw std::invalid_argument("n_max must be non-negative");
  }
  if (static_cast<int>(amplitudes.size()) != n_max + 1) {
    throw std::invalid_argument("amplitude count must equal n_max + 1");
  }
  amplitudes_ = Eigen::Map<Eigen::VectorXcd>(amplitudes.data(), n_max + 1);
  require_finite(amplitudes_);
}

FockVector FockVector::basis_state(int n_max, int n) {
  if (n_max < 0 || n < 0 || n > n_max) {
    throw std::invalid_argument("basis state index out of range");
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(n_max + 1);
  amps(n) = 1.0;
  return FockVector(std::move(amps));
}

bool FockVector::is_normalized(double tol) const {
  return std::abs(amplitudes_.squaredNorm() - 1.0) <= tol;
}

FockVector FockVector::normalized() const {
  const double n = norm();
  if (n <= 0.0) {
    throw std::domain_error("cannot normalize the zero vector");
  }
  return FockVector(amplitudes_ / n);
}

std::complex<double> FockVector::inner(const FockVector& other) const {
  if (other.dim() != dim()) {
    throw std::invalid_argument("dimension mismatch in inner product");
  }
  return amplitudes_.dot(other.amplitudes_);
}

double FockVector::overlap(const FockVector& other) const { return std::abs(inner(other)); }

OperatorMatrix::OperatorMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("operator matrix must be square and non-empty");
  }
  if (!entries_.allFinite()) {
    throw std::invalid_argument("operator matrix has non-finite entries");
  }
}

bool OperatorMatrix::is_hermitian(double tol) const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool OperatorMatrix::is_unitary(double tol) const {
  const Eigen::MatrixXcd gram = entries_.adjoint() * entries_;
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(entries_.rows(), entries_.cols());
  return (gram - eye).cwiseAbs().maxCoeff() <= tol;
}

FockVector OperatorMatrix::apply(const FockVector& state) const {
  if (state.dim() != dim()) {
    throw std::invalid_argument("operator/state dimension mismatch");
  }
  return FockVector(entries_ * state.amplitudes());
}

double NumberExpansion::sum() const {
  double total = 0.0;
  for (double p : probabilities) total += p;
  return total;
}

double NumberExpansion::mean() const {
  double total = 0.0;
  for (int n = 0; n < static_cast<int>(probabilities.size()); ++n) {
    total += n * probabilities[n];
  }
  return total;
}

LadderOperators make_ladder(int n_max) {
  if (n_max < 1) {
    throw std::invalid_argument("make_ladder requires n_max >= 1");
  }
  const int d = n_max + 1;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd num = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 1; n <= n_max; ++n) {
    c(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  for (int n = 0; n <= n_max; ++n) {
    num(n, n) = static_cast<double>(n);
  }
  return LadderOperators{OperatorMatrix(c), OperatorMatrix(c.adjoint()),
                         OperatorMatrix(std::move(num))};
}

std::complex<double> expectation(const FockVector& state, const OperatorMatrix& op,
                                 double tol) {
  if (state.dim() != op.dim()) {
    throw std::invalid_argument("operator/state dimension mismatch");
  }
  if (!state.is_normalized(tol)) {
    throw std::invalid_argument("expectation requires a normalized state");
  }
  return state.amplitudes().dot(op.entries() * state.amplitudes());
}

double mean_photon_number(const FockVector& state, double tol) {
  if (state.n_max() < 1) {
    // A vacuum-only space has <N> = 0 by definition; no ladder needed.
    if (!state.is_normalized(tol)) {
      throw std::invalid_argument("expectation requires a normalized state");
    }
    return 0.0;
  }
  return expectation(state, make_ladder(state.n_max()).number, tol).real();
}

NumberExpansion number_expansion(const FockVector& state, double tol) {
  if (!state.is_normalized(tol)) {
    throw std::invalid_argument("number_expansion requires a normalized state");
  }
  NumberExpansion expansion;
  expansion.probabilities.resize(state.dim());
  for (int n = 0; n < state.dim(); ++n) {
    expansion.probabilities[n] = std::norm(state.amplitude(n));
  }
  return expansion;
}

}  // namespace jumpback
