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

#include "jumpback/trajectory.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jumpback/rng.hpp"

namespace jumpback {

namespace {

void validate_config(const ExperimentConfig& config) {
  if (config.trials < 1) {
    throw std::invalid_argument("experiment needs at least one trial");
  }
  if (config.k < 1) {
    throw std::invalid_argument("jump multiplicity must be at least 1");
  }
  if (!(config.tol > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
}

// Shared single-shot loop. Each trial owns an RNG stream derived from
// (seed, trial), so results do not depend on execution order. The jump fires
// as a Bernoulli event; annihilated states (k-th moment below tolerance)
// cannot fire at all.
FidelityReport run_trials(const ExperimentConfig& config, const Eigen::MatrixXcd& recovery) {
  FidelityReport report;
  report.trials.reserve(config.trials);
  report.min_fidelity = std::numeric_limits<double>::infinity();
  double fidelity_sum = 0.0;

  BranchStats& jumped = report.jump_branch;
  BranchStats& stayed = report.no_jump_branch;
  jumped.min_fidelity = std::numeric_limits<double>::infinity();
  stayed.min_fidelity = std::numeric_limits<double>::infinity();
  double jumped_sum = 0.0;
  double stayed_sum = 0.0;

  for (int trial = 0; trial < config.trials; ++trial) {
    auto engine = seeded_engine(config.rng_seed, static_cast<std::uint64_t>(trial));
    const FockVector initial = sample_state_in_subspace(config.subspace, engine);
    const double moment = factorial_moment(initial, config.k, config.tol);
    const bool jump_possible = moment > config.tol;
    const double click = jump_possible ? config.detection.click_probability(moment) : 0.0;
    const bool fired = uniform_unit(engine) < click;

    Eigen::VectorXcd final_state;
    if (fired) {
      final_state = recovery * post_jump_state(initial, config.k, config.tol).amplitudes();
    } else {
      final_state = initial.amplitudes();
    }
    const double fidelity = std::abs(initial.amplitudes().dot(final_state));

    report.trials.push_back(TrialRecord{trial, fired ? config.k : 0, fidelity});
    report.jump_histogram[fired ? config.k : 0] += 1;
    fidelity_sum += fidelity;
    report.min_fidelity = std::min(report.min_fidelity, fidelity);
    BranchStats& branch = fired ? jumped : stayed;
    double& branch_sum = fired ? jumped_sum : stayed_sum;
    branch.count += 1;
    branch_sum += fidelity;
    branch.min_fidelity = std::min(branch.min_fidelity, fidelity);
  }

  report.mean_fidelity = fidelity_sum / config.trials;
  jumped.mean_fidelity = jumped.count > 0 ? jumped_sum / jumped.count : 0.0;
  stayed.mean_fidelity = stayed.count > 0 ? stayed_sum / stayed.count : 0.0;
  if (jumped.count == 0) jumped.min_fidelity = 0.0;
  if (stayed.count == 0) stayed.min_fidelity = 0.0;
  return report;
}

}  // namespace

FidelityReport run_recovery_experiment(const ExperimentConfig& config) {
  validate_config(config);
  if (!check_reversible(config.subspace, config.k, config.tol).is_reversible) {
    throw std::domain_error("recovery experiment requires a subspace certified for k");
  }
  const OperatorMatrix u = build_reversal_unitary(config.subspace, config.k, config.tol);
  return run_trials(config, u.entries().adjoint());
}

FidelityReport run_failure_experiment(const ExperimentConfig& config) {
  validate_config(config);
  if (check_reversible(config.subspace, config.k, config.tol).is_reversible) {
    throw std::domain_error("failure experiment is vacuous: subspace is certified for k");
  }
  if (config.k >= 2 &&
      !check_reversible(config.subspace, config.k - 1, config.tol).is_reversible) {
    throw std::domain_error("failure experiment requires certification for k-1");
  }
  const OperatorMatrix v = best_unitary_fit(config.subspace, config.k);
  return run_trials(config, v.entries().adjoint());
}

OperatorMatrix best_unitary_fit(const Subspace& subspace, int k) {
  if (k < 1) {
    throw std::invalid_argument("jump multiplicity must be at least 1");
  }
  const int d = subspace.n_max() + 1;
  if (subspace.dimension() == 0) {
    return OperatorMatrix(Eigen::MatrixXcd::Identity(d, d));
  }
  const Eigen::MatrixXcd b = subspace.basis_matrix();
  const Eigen::MatrixXcd c = make_ladder(subspace.n_max()).annihilation.entries();
  Eigen::MatrixXcd images = b;
  for (int j = 0; j < k; ++j) images = c * images;
  // argmax_V Re tr(V^dag M) over unitaries is the unitary polar factor of M.
  const Eigen::MatrixXcd overlap = images * b.adjoint();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return OperatorMatrix(svd.matrixU() * svd.matrixV().adjoint());
}

}  // namespace jumpback
