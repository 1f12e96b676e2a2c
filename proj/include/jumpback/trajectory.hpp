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
#include <map>
#include <vector>

#include "jumpback/information.hpp"
#include "jumpback/reversibility.hpp"
#include "jumpback/subspace.hpp"

namespace jumpback {

/// Single-shot Monte Carlo setup: each trial samples a state from the
/// subspace, fires the k-fold jump as a Bernoulli event under the detection
/// model, applies the reversal, and records the fidelity to the initial
/// state. There is no Hamiltonian and no time step.
struct ExperimentConfig {
  Subspace subspace;
  int k = 1;
  DetectionModel detection{0.1};
  int trials = 1000;
  std::uint64_t rng_seed = 0;
  double tol = kDefaultTol;
};

struct TrialRecord {
  int trial = 0;        // also the id of the sampled initial state
  int jumps_fired = 0;  // 0 or k
  double fidelity = 0.0;
};

struct BranchStats {
  int count = 0;
  double mean_fidelity = 0.0;  // 0 when the branch is empty
  double min_fidelity = 0.0;
};

struct FidelityReport {
  std::vector<TrialRecord> trials;
  double mean_fidelity = 0.0;
  double min_fidelity = 0.0;
  /// jumps fired -> number of trials
  std::map<int, int> jump_histogram;
  BranchStats jump_branch;
  BranchStats no_jump_branch;
};

/// Recovery on a certified subspace: jumped trials are restored with
/// U^dag from build_reversal_unitary, so every trial reports fidelity 1
/// within tolerance. Throws std::domain_error when the subspace is not
/// certified for multiplicity k.
FidelityReport run_recovery_experiment(const ExperimentConfig& config);

/// Irreversibility demonstration: the subspace must NOT be certified for k
/// (throws std::domain_error as vacuous otherwise; for k >= 2 it must be
/// certified for k-1). Jumped trials are reversed with the best unitary fit
/// to c^k on the subspace, and the report exhibits fidelity strictly below 1.
FidelityReport run_failure_experiment(const ExperimentConfig& config);

/// Least-squares unitary fit to the k-jump restricted to the subspace:
/// maximizes Sum_i Re<b_i|V^dag c^k|b_i> over unitaries V via the polar
/// decomposition of Sum_i c^k|b_i><b_i|. The optimum upper-bounds what any
/// unitary recovery can achieve on the subspace.
OperatorMatrix best_unitary_fit(const Subspace& subspace, int k);

}  // namespace jumpback
