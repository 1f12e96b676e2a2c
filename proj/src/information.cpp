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

#include "jumpback/information.hpp"

#include <cmath>
#include <stdexcept>

#include "jumpback/reversibility.hpp"

namespace jumpback {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// One term p*log2(p/r) of a KL divergence, written through log1p so that
// nearly identical distributions do not cancel catastrophically.
double kl_term_bits(double p, double r) {
  if (p <= 0.0) return 0.0;
  return p * (std::log1p((p - r) / r) / kLn2);
}

// KL(Bernoulli(p) || Bernoulli(r)) in bits, clamped at zero against rounding.
double binary_kl_bits(double p, double r) {
  const double kl = kl_term_bits(p, r) + kl_term_bits(1.0 - p, 1.0 - r);
  return kl > 0.0 ? kl : 0.0;
}

double entropy_term_bits(double p) {
  if (p <= 0.0) return 0.0;
  return -p * (std::log(p) / kLn2);
}

}  // namespace

DetectionModel::DetectionModel(double eta) : eta_(eta) {
  if (!(eta > 0.0) || eta > 1.0) {
    throw std::invalid_argument("detection efficiency must lie in (0, 1]");
  }
}

double DetectionModel::click_probability(double moment) const {
  if (moment < 0.0 || !std::isfinite(moment)) {
    throw std::invalid_argument("factorial moment must be finite and non-negative");
  }
  return -std::expm1(-eta_ * moment);
}

Ensemble::Ensemble(std::vector<EnsembleMember> members, double tol)
    : members_(std::move(members)) {
  if (members_.empty()) {
    throw std::invalid_argument("ensemble must have at least one member");
  }
  const int n_max = members_.front().state.n_max();
  double total = 0.0;
  for (const EnsembleMember& m : members_) {
    if (m.state.n_max() != n_max) {
      throw std::invalid_argument("ensemble members must share n_max");
    }
    if (!m.state.is_normalized(tol)) {
      throw std::invalid_argument("ensemble member states must be normalized");
    }
    if (!(m.prior >= 0.0) || !std::isfinite(m.prior)) {
      throw std::invalid_argument("ensemble priors must be non-negative");
    }
    total += m.prior;
  }
  if (std::abs(total - 1.0) > tol) {
    throw std::invalid_argument("ensemble priors must sum to 1");
  }
}

double jump_probability(const FockVector& state, const DetectionModel& model, double tol) {
  return model.click_probability(mean_photon_number(state, tol));
}

Ensemble posterior(const Ensemble& ensemble, Outcome outcome, const DetectionModel& model,
                   int k, double tol) {
  std::vector<double> likelihood(ensemble.size());
  double marginal = 0.0;
  for (int i = 0; i < ensemble.size(); ++i) {
    const double click = model.click_probability(
        factorial_moment(ensemble.member(i).state, k, tol));
    likelihood[i] = outcome == Outcome::kJump ? click : 1.0 - click;
    marginal += ensemble.member(i).prior * likelihood[i];
  }
  if (marginal <= 0.0) {
    throw std::domain_error("outcome has zero probability under the ensemble");
  }
  std::vector<EnsembleMember> updated = ensemble.members();
  for (int i = 0; i < ensemble.size(); ++i) {
    updated[i].prior = updated[i].prior * likelihood[i] / marginal;
  }
  return Ensemble(std::move(updated), tol);
}

double mutual_information(const Ensemble& ensemble, const DetectionModel& model, int k,
                          double tol) {
  std::vector<double> click(ensemble.size());
  double click_marginal = 0.0;
  for (int i = 0; i < ensemble.size(); ++i) {
    click[i] = model.click_probability(factorial_moment(ensemble.member(i).state, k, tol));
    click_marginal += ensemble.member(i).prior * click[i];
  }
  // I = sum_i w_i KL(P(outcome|i) || P(outcome)); each member term is
  // non-negative, so the total cannot round below zero.
  double bits = 0.0;
  for (int i = 0; i < ensemble.size(); ++i) {
    const double w = ensemble.member(i).prior;
    if (w <= 0.0) continue;
    bits += w * binary_kl_bits(click[i], click_marginal);
  }
  return bits;
}

FockVector post_jump_state(const FockVector& state, int k, double tol) {
  if (k < 1) {
    throw std::invalid_argument("jump multiplicity must be at least 1");
  }
  if (!state.is_normalized(tol)) {
    throw std::invalid_argument("post_jump_state requires a normalized state");
  }
  if (state.n_max() < 1 || k > state.n_max()) {
    throw std::domain_error("the k-fold jump annihilates this state");
  }
  const Eigen::MatrixXcd c = make_ladder(state.n_max()).annihilation.entries();
  Eigen::VectorXcd v = state.amplitudes();
  for (int j = 0; j < k; ++j) v = c * v;
  if (v.squaredNorm() <= tol) {
    throw std::domain_error("the k-fold jump annihilates this state");
  }
  return FockVector(v / v.norm());
}

std::vector<double> repeated_measurement_info(const std::vector<Subspace>& eigenbasis,
                                              const Ensemble& initial, int count,
                                              double tol) {
  if (count < 1) {
    throw std::invalid_argument("measurement count must be at least 1");
  }
  if (eigenbasis.empty()) {
    throw std::invalid_argument("eigenbasis must not be empty");
  }
  const int n_max = initial.n_max();
  const int d = n_max + 1;
  int total_dim = 0;
  for (const Subspace& s : eigenbasis) {
    if (s.n_max() != n_max) {
      throw std::invalid_argument("eigenbasis must live on the ensemble's n_max");
    }
    total_dim += s.dimension();
  }
  if (total_dim != d) {
    throw std::invalid_argument("eigenbasis is incomplete on the truncated space");
  }
  Eigen::MatrixXcd stacked(d, d);
  std::vector<Eigen::MatrixXcd> frames;
  int col = 0;
  for (const Subspace& s : eigenbasis) {
    frames.push_back(s.basis_matrix());
    stacked.middleCols(col, s.dimension()) = frames.back();
    col += s.dimension();
  }
  if (identity_deviation(stacked.adjoint() * stacked) > tol) {
    throw std::invalid_argument("eigenbasis subspaces are not mutually orthonormal");
  }

  // The observer's state of knowledge is a tree of outcome histories; each
  // node carries the surviving (weight, collapsed state) branches. The
  // information of a round is the expected entropy of its outcome given the
  // history so far.
  struct WeightedState {
    double weight;
    Eigen::VectorXcd state;
  };
  struct HistoryGroup {
    double weight;
    std::vector<WeightedState> branches;
  };

  constexpr double kPrune = 1e-16;
  const int outcomes = static_cast<int>(eigenbasis.size());

  std::vector<HistoryGroup> groups(1);
  groups[0].weight = 1.0;
  for (const EnsembleMember& m : initial.members()) {
    groups[0].branches.push_back(WeightedState{m.prior, m.state.amplitudes()});
  }

  std::vector<double> bits_per_round;
  bits_per_round.reserve(count);
  for (int round = 0; round < count; ++round) {
    double round_bits = 0.0;
    std::vector<HistoryGroup> next;
    for (const HistoryGroup& group : groups) {
      std::vector<double> outcome_weight(outcomes, 0.0);
      std::vector<std::vector<WeightedState>> split(outcomes);
      for (const WeightedState& ws : group.branches) {
        for (int j = 0; j < outcomes; ++j) {
          const Eigen::VectorXcd coeffs = frames[j].adjoint() * ws.state;
          const double w = ws.weight * coeffs.squaredNorm();
          if (w <= kPrune) continue;
          outcome_weight[j] += w;
          Eigen::VectorXcd collapsed = frames[j] * coeffs;
          collapsed /= collapsed.norm();
          split[j].push_back(WeightedState{w, std::move(collapsed)});
        }
      }
      double group_total = 0.0;
      for (double w : outcome_weight) group_total += w;
      if (group_total <= 0.0) continue;
      for (int j = 0; j < outcomes; ++j) {
        round_bits += group_total * entropy_term_bits(outcome_weight[j] / group_total);
      }
      for (int j = 0; j < outcomes; ++j) {
        if (outcome_weight[j] > kPrune) {
          next.push_back(HistoryGroup{outcome_weight[j], std::move(split[j])});
        }
      }
    }
    bits_per_round.push_back(round_bits);
    groups = std::move(next);
  }
  return bits_per_round;
}

}  // namespace jumpback
