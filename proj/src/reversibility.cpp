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

#include "jumpback/reversibility.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "jumpback/rng.hpp"

namespace jumpback {

namespace {

// n(n-1)...(n-k+1); exact in double for the truncation sizes in play.
double falling_factorial(int n, int k) {
  double value = 1.0;
  for (int j = 0; j < k; ++j) value *= static_cast<double>(n - j);
  return value;
}

Eigen::MatrixXcd annihilation_matrix(int n_max) {
  return make_ladder(n_max).annihilation.entries();
}

Eigen::MatrixXcd apply_jump_power(const Eigen::MatrixXcd& c, int k,
                                  const Eigen::MatrixXcd& columns) {
  Eigen::MatrixXcd out = columns;
  for (int j = 0; j < k; ++j) out = c * out;
  return out;
}

void require_support_clears_top(const Subspace& subspace, int k, double tol) {
  const int n_max = subspace.n_max();
  if (k > n_max) {
    throw std::invalid_argument("subspace support cannot avoid the top k levels");
  }
  for (const FockVector& b : subspace.basis()) {
    for (int n = n_max - k + 1; n <= n_max; ++n) {
      if (std::abs(b.amplitude(n)) > tol) {
        throw std::invalid_argument("basis support touches the top k levels");
      }
    }
  }
}

// Direction-preserving modified Gram-Schmidt; columns already near-orthonormal
// move by O(initial deviation) only.
void mgs_orthonormalize(Eigen::MatrixXcd& m) {
  for (int j = 0; j < m.cols(); ++j) {
    for (int i = 0; i < j; ++i) {
      m.col(j) -= m.col(i).dot(m.col(j)) * m.col(i);
    }
    const double norm = m.col(j).norm();
    if (norm <= 1e-14) {
      throw std::domain_error("rank-deficient column set in orthonormalization");
    }
    m.col(j) /= norm;
  }
}

// Orthonormal basis of the orthogonal complement of the given columns.
Eigen::MatrixXcd orthogonal_complement(const Eigen::MatrixXcd& columns) {
  const int d = static_cast<int>(columns.rows());
  const int m = static_cast<int>(columns.cols());
  if (m == 0) return Eigen::MatrixXcd::Identity(d, d);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(columns);
  Eigen::MatrixXcd q = qr.householderQ();
  return q.rightCols(d - m);
}

// Nearest matrix with orthonormal columns (unitary polar factor).
Eigen::MatrixXcd polar_orthonormalize(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// ---- maximal-subspace search ---------------------------------------------

// The form (c^dag)^k c^k - I is diagonal in the number basis with entries
// ff_k(n) - 1, so its eigendecomposition on the allowed support is explicit.
Eigen::VectorXd form_diagonal(int support_dim, int k) {
  Eigen::VectorXd diag(support_dim);
  for (int n = 0; n < support_dim; ++n) diag(n) = falling_factorial(n, k) - 1.0;
  return diag;
}

struct Signature {
  std::vector<std::pair<double, int>> positive;  // (eigenvalue, level)
  std::vector<std::pair<double, int>> negative;  // (|eigenvalue|, level)
  std::vector<int> null;
  int neutral_dimension() const {
    return static_cast<int>(std::min(positive.size(), negative.size()) + null.size());
  }
};

Signature form_signature(const Eigen::VectorXd& diag) {
  Signature sig;
  for (int n = 0; n < diag.size(); ++n) {
    if (diag(n) == 0.0) {
      sig.null.push_back(n);
    } else if (diag(n) > 0.0) {
      sig.positive.emplace_back(diag(n), n);
    } else {
      sig.negative.emplace_back(-diag(n), n);
    }
  }
  std::sort(sig.positive.begin(), sig.positive.end());
  std::sort(sig.negative.begin(), sig.negative.end());
  return sig;
}

// Exact maximal neutral basis for a single diagonal form: null eigenvectors,
// then one vector per positive/negative pair weighted so the form vanishes.
Eigen::MatrixXcd single_form_neutral_basis(int support_dim, int k) {
  const Signature sig = form_signature(form_diagonal(support_dim, k));
  const int pairs = static_cast<int>(std::min(sig.positive.size(), sig.negative.size()));
  Eigen::MatrixXcd basis =
      Eigen::MatrixXcd::Zero(support_dim, static_cast<int>(sig.null.size()) + pairs);
  int col = 0;
  for (int n : sig.null) basis(n, col++) = 1.0;
  for (int i = 0; i < pairs; ++i) {
    const auto [lam_pos, n_pos] = sig.positive[i];
    const auto [lam_neg, n_neg] = sig.negative[i];
    basis(n_pos, col) = std::sqrt(lam_neg / (lam_pos + lam_neg));
    basis(n_neg, col) = std::sqrt(lam_pos / (lam_pos + lam_neg));
    ++col;
  }
  return basis;
}

double joint_objective(const std::vector<Eigen::VectorXd>& forms, const Eigen::MatrixXcd& b) {
  double f = 0.0;
  for (const auto& diag : forms) {
    const Eigen::MatrixXcd m = b.adjoint() * (diag.asDiagonal() * b);
    f += m.squaredNorm();
  }
  return f;
}

// Projected alternating feasibility: descend Sum_k ||B^dag D_k B||_F^2 in the
// ambient space, then project back onto orthonormal frames. Success means the
// residual is far below the certification tolerance.
bool refine_joint_candidate(const std::vector<Eigen::VectorXd>& forms, Eigen::MatrixXcd& b,
                            int max_iterations) {
  constexpr double kConverged = 1e-26;
  double f = joint_objective(forms, b);
  for (int iter = 0; iter < max_iterations; ++iter) {
    if (f <= kConverged) return true;
    Eigen::MatrixXcd grad = Eigen::MatrixXcd::Zero(b.rows(), b.cols());
    for (const auto& diag : forms) {
      const Eigen::MatrixXcd m = b.adjoint() * (diag.asDiagonal() * b);
      grad += 4.0 * (diag.asDiagonal() * (b * m));
    }
    const double gnorm2 = grad.squaredNorm();
    if (gnorm2 <= 1e-30) return f <= kConverged;
    double step = f / gnorm2;
    bool improved = false;
    for (int bt = 0; bt < 60; ++bt) {
      const Eigen::MatrixXcd trial = polar_orthonormalize(b - step * grad);
      const double f_trial = joint_objective(forms, trial);
      if (f_trial < f) {
        b = trial;
        f = f_trial;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) return f <= kConverged;
  }
  return f <= kConverged;
}

bool next_combination(std::vector<int>& idx, int n) {
  const int s = static_cast<int>(idx.size());
  for (int i = s - 1; i >= 0; --i) {
    if (idx[i] < n - (s - i)) {
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct SupportGroup {
  std::vector<int> levels;
  Eigen::VectorXd weights;  // probabilities on the levels
};

// Single vectors with disjoint number-basis supports are automatically
// neutral against each other for diagonal forms, so groups solving
//   sum p = 1,  sum ff_k(n) p = 1 for every k,  p >= 0
// assemble into jointly feasible bases. Enumerated smallest-support-first in
// lexicographic order to keep the outcome deterministic.
std::vector<SupportGroup> feasible_support_groups(int support_dim,
                                                  const std::set<int>& k_set) {
  const int equations = static_cast<int>(k_set.size()) + 1;
  std::vector<SupportGroup> groups;
  for (int size = 1; size <= std::min(equations, support_dim); ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    do {
      Eigen::MatrixXd a(equations, size);
      Eigen::VectorXd rhs = Eigen::VectorXd::Ones(equations);
      for (int j = 0; j < size; ++j) a(0, j) = 1.0;
      int row = 1;
      for (int k : k_set) {
        for (int j = 0; j < size; ++j) a(row, j) = falling_factorial(idx[j], k);
        ++row;
      }
      Eigen::VectorXd p = a.colPivHouseholderQr().solve(rhs);
      if ((a * p - rhs).norm() <= 1e-10 && p.minCoeff() >= -1e-12) {
        groups.push_back(SupportGroup{idx, p.cwiseMax(0.0)});
      }
    } while (next_combination(idx, support_dim));
  }
  return groups;
}

// Greedy disjoint selection of m feasible groups; empty result when fewer
// disjoint groups exist.
Eigen::MatrixXcd structured_joint_basis(int support_dim, const std::set<int>& k_set, int m) {
  std::vector<bool> used(support_dim, false);
  std::vector<SupportGroup> chosen;
  for (const SupportGroup& g : feasible_support_groups(support_dim, k_set)) {
    bool clash = false;
    for (int n : g.levels) clash = clash || used[n];
    if (clash) continue;
    for (int n : g.levels) used[n] = true;
    chosen.push_back(g);
    if (static_cast<int>(chosen.size()) == m) break;
  }
  if (static_cast<int>(chosen.size()) < m) return Eigen::MatrixXcd();
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(support_dim, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < static_cast<int>(chosen[j].levels.size()); ++i) {
      basis(chosen[j].levels[i], j) = std::sqrt(chosen[j].weights(i));
    }
  }
  return basis;
}

Subspace embed_candidate(const Eigen::MatrixXcd& support_basis, int n_max, double tol) {
  const int d = n_max + 1;
  std::vector<FockVector> basis;
  basis.reserve(support_basis.cols());
  for (int j = 0; j < support_basis.cols(); ++j) {
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(d);
    full.head(support_basis.rows()) = support_basis.col(j);
    basis.emplace_back(std::move(full));
  }
  return Subspace(n_max, std::move(basis), 0, tol);
}

std::vector<int> support_levels(const Subspace& subspace, double tol) {
  std::vector<int> levels;
  for (int n = 0; n <= subspace.n_max(); ++n) {
    for (const FockVector& b : subspace.basis()) {
      if (std::abs(b.amplitude(n)) > tol) {
        levels.push_back(n);
        break;
      }
    }
  }
  return levels;
}

struct ScoredCandidate {
  Subspace subspace;
  double total_deviation;
  std::vector<int> support;
};

// Tie-break: total Gram deviation, then sparser support, then lexicographic
// support levels. Stable against insertion order for exact ties.
bool better_candidate(const ScoredCandidate& a, const ScoredCandidate& b) {
  if (a.total_deviation != b.total_deviation) return a.total_deviation < b.total_deviation;
  if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
  return a.support < b.support;
}

}  // namespace

ReversibilityReport check_reversible(const Subspace& subspace, int k, double tol) {
  if (k < 1) {
    throw std::invalid_argument("jump multiplicity must be at least 1");
  }
  require_support_clears_top(subspace, k, tol);
  if (!subspace.basis().empty() &&
      identity_deviation(gram_matrix(subspace.basis())) > tol) {
    throw std::invalid_argument("basis is not orthonormal within tolerance");
  }

  ReversibilityReport report;
  report.k = k;
  if (subspace.dimension() == 0) {
    report.is_reversible = true;
    return report;
  }

  const Eigen::MatrixXcd c = annihilation_matrix(subspace.n_max());
  const Eigen::MatrixXcd images = apply_jump_power(c, k, subspace.basis_matrix());
  const Eigen::MatrixXcd gram = images.adjoint() * images;

  double worst = 0.0;
  int worst_i = 0;
  int worst_j = 0;
  for (int i = 0; i < gram.rows(); ++i) {
    for (int j = 0; j < gram.cols(); ++j) {
      const double dev = std::abs(gram(i, j) - (i == j ? 1.0 : 0.0));
      if (dev > worst) {
        worst = dev;
        worst_i = i;
        worst_j = j;
      }
    }
  }
  report.gram_deviation = worst;
  report.is_reversible = worst <= tol;
  if (!report.is_reversible) {
    report.violating_pair = std::make_pair(worst_i, worst_j);
  }
  return report;
}

double factorial_moment(const FockVector& state, int k, double tol) {
  if (k < 1) {
    throw std::invalid_argument("jump multiplicity must be at least 1");
  }
  if (!state.is_normalized(tol)) {
    throw std::invalid_argument("factorial_moment requires a normalized state");
  }
  if (state.n_max() < 1 || k > state.n_max()) {
    return 0.0;  // c^k annihilates the whole truncated space
  }
  const Eigen::MatrixXcd c = annihilation_matrix(state.n_max());
  Eigen::VectorXcd v = state.amplitudes();
  for (int j = 0; j < k; ++j) v = c * v;
  return v.squaredNorm();
}

bool min_photon_support(const Subspace& subspace, int k, double tol, int samples,
                        std::uint64_t rng_seed) {
  if (subspace.dimension() == 0) {
    throw std::invalid_argument("min_photon_support requires a non-empty subspace");
  }
  if (k < 1) {
    throw std::invalid_argument("jump multiplicity must be at least 1");
  }
  if (k > subspace.n_max()) {
    return false;  // no level n >= k exists on this truncation
  }

  const auto has_high_component = [&](const FockVector& v) {
    for (int n = k; n <= subspace.n_max(); ++n) {
      if (std::norm(v.amplitude(n)) > tol) return true;
    }
    return false;
  };

  for (const FockVector& b : subspace.basis()) {
    if (!has_high_component(b)) return false;
  }
  auto engine = seeded_engine(rng_seed);
  for (int s = 0; s < samples; ++s) {
    if (!has_high_component(sample_state_in_subspace(subspace, engine))) return false;
  }

  // Random superpositions cannot witness isolated null directions, so also
  // certify exactly: every unit state keeps squared weight >= sigma_min^2 on
  // levels >= k, where sigma_min is the smallest singular value of those
  // basis rows.
  const Eigen::MatrixXcd high_rows =
      subspace.basis_matrix().bottomRows(subspace.n_max() + 1 - k);
  if (high_rows.rows() < high_rows.cols()) return false;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(high_rows);
  const double sigma_min = svd.singularValues().minCoeff();
  return sigma_min * sigma_min > tol;
}

OperatorMatrix build_reversal_unitary(const Subspace& subspace, int k, double tol) {
  const ReversibilityReport report = check_reversible(subspace, k, tol);
  if (!report.is_reversible) {
    throw std::domain_error("subspace is not reversible for this multiplicity");
  }
  const int d = subspace.n_max() + 1;
  if (subspace.dimension() == 0) {
    return OperatorMatrix(Eigen::MatrixXcd::Identity(d, d));
  }
  const Eigen::MatrixXcd b = subspace.basis_matrix();
  const Eigen::MatrixXcd c = annihilation_matrix(subspace.n_max());
  Eigen::MatrixXcd images = apply_jump_power(c, k, b);
  mgs_orthonormalize(images);  // moves each image by at most O(gram deviation)

  const Eigen::MatrixXcd domain_rest = orthogonal_complement(b);
  const Eigen::MatrixXcd range_rest = orthogonal_complement(images);
  Eigen::MatrixXcd u = images * b.adjoint() + range_rest * domain_rest.adjoint();
  return OperatorMatrix(std::move(u));
}

Subspace find_maximal_reversible_subspace(int n_max, const std::set<int>& k_set,
                                          std::uint64_t rng_seed,
                                          const FinderOptions& options) {
  if (k_set.empty()) {
    throw std::invalid_argument("k_set must not be empty");
  }
  for (int k : k_set) {
    if (k < 1) throw std::invalid_argument("jump multiplicities must be at least 1");
  }
  if (n_max < 1) {
    throw std::invalid_argument("n_max must be at least 1");
  }
  const int top_exclusion = *k_set.rbegin();
  const int support_dim = n_max + 1 - top_exclusion;
  if (support_dim < 1) {
    throw std::invalid_argument("support cannot avoid the top max(k_set) levels");
  }
  const double tol = options.tol;

  const auto finish = [&](const Subspace& s) {
    return s.with_k_max(certified_multiplicity(s, tol));
  };

  if (k_set.size() == 1) {
    const Eigen::MatrixXcd basis = single_form_neutral_basis(support_dim, *k_set.begin());
    if (basis.cols() == 0) {
      throw std::domain_error("no reversible subspace exists under the support constraints");
    }
    return finish(embed_candidate(basis, n_max, tol));
  }

  std::vector<Eigen::VectorXd> forms;
  int upper = support_dim;
  for (int k : k_set) {
    forms.push_back(form_diagonal(support_dim, k));
    upper = std::min(upper, form_signature(forms.back()).neutral_dimension());
  }

  for (int m = upper; m >= 1; --m) {
    std::vector<ScoredCandidate> scored;
    std::vector<Eigen::MatrixXcd> attempts;
    const Eigen::MatrixXcd structured = structured_joint_basis(support_dim, k_set, m);
    if (structured.cols() == m) attempts.push_back(structured);
    for (int r = 0; r < options.restarts; ++r) {
      auto engine = seeded_engine(rng_seed, static_cast<std::uint64_t>(m) * 1000003u + r);
      Eigen::MatrixXcd start(support_dim, m);
      for (int i = 0; i < support_dim; ++i) {
        for (int j = 0; j < m; ++j) start(i, j) = standard_complex_gaussian(engine);
      }
      Eigen::MatrixXcd b = polar_orthonormalize(start);
      if (refine_joint_candidate(forms, b, options.max_iterations)) {
        attempts.push_back(b);
      }
    }
    for (const Eigen::MatrixXcd& attempt : attempts) {
      Subspace candidate = embed_candidate(attempt, n_max, tol);
      double total_deviation = 0.0;
      bool all_pass = true;
      for (int k : k_set) {
        const ReversibilityReport rep = check_reversible(candidate, k, tol);
        all_pass = all_pass && rep.is_reversible;
        total_deviation += rep.gram_deviation;
      }
      if (all_pass) {
        scored.push_back(
            ScoredCandidate{candidate, total_deviation, support_levels(candidate, tol)});
      }
    }
    if (!scored.empty()) {
      const auto best =
          std::min_element(scored.begin(), scored.end(), better_candidate);
      return finish(best->subspace);
    }
  }
  throw std::domain_error("no jointly reversible subspace exists under the support constraints");
}

int certified_multiplicity(const Subspace& subspace, double tol) {
  int certified = 0;
  for (int j = 1; j <= subspace.n_max(); ++j) {
    try {
      require_support_clears_top(subspace, j, tol);
    } catch (const std::invalid_argument&) {
      break;
    }
    if (!check_reversible(subspace, j, tol).is_reversible) break;
    certified = j;
  }
  return certified;
}

}  // namespace jumpback
