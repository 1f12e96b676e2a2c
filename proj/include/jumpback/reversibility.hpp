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
#include <optional>
#include <set>
#include <utility>

#include "jumpback/fock.hpp"
#include "jumpback/subspace.hpp"

namespace jumpback {

/// Verdict of the isometry test for c^k restricted to a subspace.
struct ReversibilityReport {
  bool is_reversible = false;
  int k = 0;
  /// Max-norm of Gram(c^k basis) - I.
  double gram_deviation = 0.0;
  /// Index pair attaining the deviation when not reversible.
  std::optional<std::pair<int, int>> violating_pair;
};

/// Decides whether the k-fold jump acts isometrically on the subspace, i.e.
/// whether some unitary agrees with c^k on it. Computes the Gram matrix
/// G_ij = <b_i|(c^dag)^k c^k|b_j> of the jumped basis and compares it with
/// the identity.
///
/// Preconditions: k >= 1 and every basis vector has zero amplitude on the
/// top k levels (n_max-k+1 .. n_max), so truncation cannot mask leakage.
/// Throws std::invalid_argument on support or orthonormality violations.
ReversibilityReport check_reversible(const Subspace& subspace, int k,
                                     double tol = kDefaultTol);

/// <psi| N(N-1)...(N-k+1) |psi>, evaluated through the ladder matrix as the
/// squared norm of c^k|psi> (exact on the truncated space since lowering
/// never crosses the cutoff). Equals Sum_n n(n-1)...(n-k+1) p_n.
double factorial_moment(const FockVector& state, int k, double tol = kDefaultTol);

/// True iff every state of the subspace has a photon-number component with
/// n >= k. Checks the basis vectors and a seeded batch of random
/// superpositions, and additionally certifies the claim exactly through the
/// smallest singular value of the basis rows at levels >= k.
bool min_photon_support(const Subspace& subspace, int k, double tol = kDefaultTol,
                        int samples = 64, std::uint64_t rng_seed = 0);

/// Completes the isometry c^k|_S to a full unitary U on the truncated space:
/// U|b_i> = c^k|b_i> for every basis vector, with the orthogonal complements
/// of domain and image mapped to each other in index order. Requires the
/// subspace to pass check_reversible(subspace, k); throws std::domain_error
/// otherwise. Applying U^dag after the jump restores any subspace state up
/// to global phase.
OperatorMatrix build_reversal_unitary(const Subspace& subspace, int k,
                                      double tol = kDefaultTol);

struct FinderOptions {
  int restarts = 32;        // randomized restarts per candidate dimension
  int max_iterations = 600; // refinement iterations per restart
  double tol = kDefaultTol;
};

/// Searches for a subspace of maximal dimension that passes check_reversible
/// for every k in k_set, with support restricted away from the top
/// max(k_set) levels. Feasibility for one k is equivalent to neutrality of
/// the Hermitian form (c^dag)^k c^k - I; the single-k case is solved exactly
/// by pairing positive and negative eigenvectors of the form (dimension
/// min(n+, n-) + n0 from the eigenvalue signature). Joint sets are refined
/// by projected alternating feasibility with seeded randomized restarts.
/// Deterministic for a fixed seed. Throws std::invalid_argument when the
/// support constraint leaves no room and std::domain_error when no
/// reversible subspace exists.
Subspace find_maximal_reversible_subspace(int n_max, const std::set<int>& k_set,
                                          std::uint64_t rng_seed,
                                          const FinderOptions& options = {});

/// Largest m such that check_reversible passes for every j <= m (stopping
/// early if the support precondition cannot be met). 0 if nothing passes.
int certified_multiplicity(const Subspace& subspace, double tol = kDefaultTol);

}  // namespace jumpback
