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

#include "jumpback/subspace.hpp"

#include <stdexcept>

#include "jumpback/rng.hpp"

namespace jumpback {

Subspace::Subspace(int n_max, std::vector<FockVector> basis, int k_max, double tol)
    : n_max_(n_max), k_max_(k_max), basis_(std::move(basis)) {
  if (n_max_ < 0) {
    throw std::invalid_argument("subspace n_max must be non-negative");
  }
  if (k_max_ < 0) {
    throw std::invalid_argument("subspace k_max must be non-negative");
  }
  for (const FockVector& v : basis_) {
    if (v.n_max() != n_max_) {
      throw std::invalid_argument("all basis vectors must share the subspace n_max");
    }
  }
  if (!basis_.empty() && identity_deviation(gram_matrix(basis_)) > tol) {
    throw std::invalid_argument("subspace basis is not orthonormal within tolerance");
  }
}

Eigen::MatrixXcd Subspace::basis_matrix() const {
  Eigen::MatrixXcd b(n_max_ + 1, dimension());
  for (int i = 0; i < dimension(); ++i) {
    b.col(i) = basis_[i].amplitudes();
  }
  return b;
}

Subspace Subspace::with_k_max(int k_max) const {
  Subspace copy = *this;
  if (k_max < 0) {
    throw std::invalid_argument("subspace k_max must be non-negative");
  }
  copy.k_max_ = k_max;
  return copy;
}

Eigen::MatrixXcd gram_matrix(const std::vector<FockVector>& vectors) {
  const int m = static_cast<int>(vectors.size());
  Eigen::MatrixXcd gram(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      gram(i, j) = vectors[i].inner(vectors[j]);
    }
  }
  return gram;
}

double identity_deviation(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return 0.0;
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return (m - eye).cwiseAbs().maxCoeff();
}

FockVector sample_state_in_subspace(const Subspace& subspace, std::uint64_t rng_seed) {
  auto engine = seeded_engine(rng_seed);
  return sample_state_in_subspace(subspace, engine);
}

FockVector sample_state_in_subspace(const Subspace& subspace, std::mt19937_64& engine) {
  if (subspace.dimension() == 0) {
    throw std::invalid_argument("cannot sample from an empty subspace");
  }
  Eigen::VectorXcd coeffs(subspace.dimension());
  for (int i = 0; i < subspace.dimension(); ++i) {
    coeffs(i) = standard_complex_gaussian(engine);
  }
  Eigen::VectorXcd state = subspace.basis_matrix() * coeffs;
  const double norm = state.norm();
  if (norm <= 0.0) {
    // Astronomically unlikely; draw again rather than divide by zero.
    return sample_state_in_subspace(subspace, engine);
  }
  return FockVector(state / norm);
}

}  // namespace jumpback
