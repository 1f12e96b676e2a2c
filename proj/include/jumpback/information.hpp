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

#include <vector>

#include "jumpback/fock.hpp"
#include "jumpback/subspace.hpp"

namespace jumpback {

/// Detector response within one observation window. The click probability
/// for a k-fold jump is 1 - exp(-eta * m_k) with m_k the k-th factorial
/// moment of the state, so it is strictly increasing in the moment: states
/// with equal moments are indistinguishable by the detector. That
/// monotonicity is the load-bearing property; the exponential form keeps the
/// probability in [0, 1) and reduces to eta * m_k for small eta.
class DetectionModel {
 public:
  /// Throws std::invalid_argument unless 0 < eta <= 1.
  explicit DetectionModel(double eta = 0.1);

  double eta() const { return eta_; }
  /// 1 - exp(-eta * moment) for a non-negative moment.
  double click_probability(double moment) const;

 private:
  double eta_ = 0.1;
};

struct EnsembleMember {
  FockVector state;
  double prior = 0.0;
};

/// A classical mixture of candidate preparations: which member was prepared
/// is the uncertainty a jump event could in principle resolve.
class Ensemble {
 public:
  /// Members must be normalized states with non-negative priors summing to 1
  /// within tol; throws std::invalid_argument otherwise.
  explicit Ensemble(std::vector<EnsembleMember> members, double tol = kDefaultTol);

  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<EnsembleMember>& members() const { return members_; }
  const EnsembleMember& member(int i) const { return members_[i]; }
  int n_max() const { return members_.front().state.n_max(); }

 private:
  std::vector<EnsembleMember> members_;
};

enum class Outcome { kJump, kNoJump };

/// P(click | state) = 1 - exp(-eta <N>). Zero iff the state is vacuum.
double jump_probability(const FockVector& state, const DetectionModel& model,
                        double tol = kDefaultTol);

/// Bayes update of the member priors given a k-fold jump / no-jump outcome.
/// States are unchanged; only the classical uncertainty moves. Throws
/// std::domain_error when the outcome has zero marginal probability.
Ensemble posterior(const Ensemble& ensemble, Outcome outcome, const DetectionModel& model,
                   int k = 1, double tol = kDefaultTol);

/// Shannon mutual information, in bits, between the prepared member and the
/// k-fold jump / no-jump outcome. Computed as the prior-weighted KL
/// divergence of each member's outcome distribution from the marginal, which
/// is non-negative term by term. Zero exactly when all members share the
/// same k-th factorial moment.
double mutual_information(const Ensemble& ensemble, const DetectionModel& model, int k,
                          double tol = kDefaultTol);

/// c^k|psi> normalized. Throws std::domain_error when c^k annihilates the
/// state (the k-jump outcome was impossible from it).
FockVector post_jump_state(const FockVector& state, int k, double tol = kDefaultTol);

/// Expected information gain, in bits, of each of `count` successive
/// projective measurements of one observable whose eigenspaces are the given
/// mutually orthogonal, complete subspaces. Round t reports the expected
/// entropy of the round-t outcome given the outcomes already seen; from the
/// second round on the outcome repeats with certainty, so entries 2..count
/// vanish. Throws std::invalid_argument on an incomplete or non-orthogonal
/// eigenbasis.
std::vector<double> repeated_measurement_info(const std::vector<Subspace>& eigenbasis,
                                              const Ensemble& initial, int count,
                                              double tol = kDefaultTol);

}  // namespace jumpback
