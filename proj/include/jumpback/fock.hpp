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

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace jumpback {

// Default tolerance for all structural checks (orthonormality, hermiticity,
// unitarity, normalization). Overridable per call; the CLI also honors the
// JUMPBACK_TOL environment variable.
inline constexpr double kDefaultTol = 1e-10;

/// A single-mode state on the truncated photon-number basis |0..n_max>.
/// Amplitudes are stored in increasing photon number; global phase carries
/// no meaning and comparisons should use |<a|b>|.
class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(Eigen::VectorXcd amplitudes);
  FockVector(int n_max, std::vector<std::complex<double>> amplitudes);

  /// The number state |n> on the space truncated at n_max.
  static FockVector basis_state(int n_max, int n);

  int n_max() const { return static_cast<int>(amplitudes_.size()) - 1; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  std::complex<double> amplitude(int n) const { return amplitudes_(n); }

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = kDefaultTol) const;
  FockVector normalized() const;

  /// <this|other>
  std::complex<double> inner(const FockVector& other) const;
  /// Phase-blind overlap |<this|other>|.
  double overlap(const FockVector& other) const;

 private:
  Eigen::VectorXcd amplitudes_;
};

/// Dense complex operator on the truncated space. Thin value wrapper around
/// the matrix; hermitian/unitary are queries against a tolerance, not baked
/// in flags.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(Eigen::MatrixXcd entries);

  int n_max() const { return static_cast<int>(entries_.rows()) - 1; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  bool is_hermitian(double tol = kDefaultTol) const;
  bool is_unitary(double tol = kDefaultTol) const;

  OperatorMatrix adjoint() const { return OperatorMatrix(entries_.adjoint()); }
  FockVector apply(const FockVector& state) const;

 private:
  Eigen::MatrixXcd entries_;
};

/// Photon-number probabilities p_n = |c_n|^2 of a normalized state.
struct NumberExpansion {
  std::vector<double> probabilities;

  int n_max() const { return static_cast<int>(probabilities.size()) - 1; }
  double sum() const;
  /// Sum_n n * p_n.
  double mean() const;
};

struct LadderOperators {
  OperatorMatrix annihilation;  // c, with c|n> = sqrt(n)|n-1>
  OperatorMatrix creation;      // c^dagger (adjoint of the truncated c)
  OperatorMatrix number;        // N, exact diagonal diag(0..n_max)
};

/// Builds (c, c^dagger, N) on the basis truncated at n_max. N is written
/// directly as the exact diagonal rather than the product c^dagger c, so its
/// entries are integers with no rounding from the sqrt factors.
LadderOperators make_ladder(int n_max);

/// <state|op|state>. The state must be normalized and dimensions must match.
/// For a hermitian op the imaginary part is numerical noise; callers wanting
/// the physical value take the real part.
std::complex<double> expectation(const FockVector& state, const OperatorMatrix& op,
                                 double tol = kDefaultTol);

/// Real expectation of the photon-number operator of matching dimension.
double mean_photon_number(const FockVector& state, double tol = kDefaultTol);

/// p_n = |c_n|^2 for a normalized state.
NumberExpansion number_expansion(const FockVector& state, double tol = kDefaultTol);

}  // namespace jumpback
