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

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "jumpback/fock.hpp"

namespace jumpback {

/// An orthonormal set of FockVectors spanning a linear subspace of the
/// truncated space. k_max records the largest jump multiplicity the subspace
/// is certified reversible for (certified for every j <= k_max); 0 means
/// unverified. Instances are immutable after construction.
class Subspace {
 public:
  /// Zero-dimensional subspace of the vacuum-only space.
  Subspace() = default;

  /// Throws std::invalid_argument if the vectors disagree on n_max or the
  /// Gram matrix deviates from the identity by more than tol. An empty basis
  /// is a valid zero-dimensional subspace.
  Subspace(int n_max, std::vector<FockVector> basis, int k_max = 0,
           double tol = kDefaultTol);

  int n_max() const { return n_max_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  int k_max() const { return k_max_; }
  const std::vector<FockVector>& basis() const { return basis_; }
  const FockVector& basis_vector(int i) const { return basis_[i]; }

  /// (n_max+1) x dimension matrix whose columns are the basis vectors.
  Eigen::MatrixXcd basis_matrix() const;

  /// Copy with a different certification level. Callers are expected to go
  /// through reversibility checks to establish the level.
  Subspace with_k_max(int k_max) const;

 private:
  int n_max_ = 0;
  int k_max_ = 0;
  std::vector<FockVector> basis_;
};

/// Gram matrix G_ij = <v_i|v_j>.
Eigen::MatrixXcd gram_matrix(const std::vector<FockVector>& vectors);

/// Max-norm deviation of a square matrix from the identity.
double identity_deviation(const Eigen::MatrixXcd& m);

/// Haar-uniform state on the unit sphere of the subspace: independent
/// standard complex Gaussian coefficients over the basis, then normalize.
/// Deterministic for a fixed seed. Throws on an empty subspace.
FockVector sample_state_in_subspace(const Subspace& subspace, std::uint64_t rng_seed);

/// Same, drawing from a caller-owned engine (used for per-trial streams).
FockVector sample_state_in_subspace(const Subspace& subspace, std::mt19937_64& engine);

}  // namespace jumpback
