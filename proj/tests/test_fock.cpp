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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jumpback/fock.hpp"
#include "jumpback/rng.hpp"
#include "jumpback/subspace.hpp"
#include "test_support.hpp"

using namespace jumpback;

namespace {

Subspace full_space(int n_max) {
  std::vector<FockVector> basis;
  for (int n = 0; n <= n_max; ++n) basis.push_back(FockVector::basis_state(n_max, n));
  return Subspace(n_max, std::move(basis));
}

}  // namespace

TEST_CASE("ladder operators have the textbook matrix elements") {
  const auto [c, cdag, num] = make_ladder(2);
  CHECK(c.entries()(1, 2).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(c.entries()(0, 1).real() == doctest::Approx(1.0).epsilon(1e-15));

  // c|0> = 0
  const FockVector vacuum = FockVector::basis_state(2, 0);
  CHECK(c.apply(vacuum).norm() == doctest::Approx(0.0));

  // c|2> = sqrt(2)|1>
  const FockVector two = FockVector::basis_state(2, 2);
  const FockVector lowered = c.apply(two);
  CHECK(std::abs(lowered.amplitude(1)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(lowered.amplitude(0)) == 0.0);
  CHECK(std::abs(lowered.amplitude(2)) == 0.0);

  CHECK((cdag.entries() - c.entries().adjoint()).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(make_ladder(0), std::invalid_argument);
}

TEST_CASE("number operator is the exact diagonal, not the truncated product") {
  const auto ladder = make_ladder(3);
  for (int n = 0; n <= 3; ++n) {
    // bitwise-exact integers on the diagonal
    CHECK(ladder.number.entries()(n, n) == std::complex<double>(n, 0.0));
  }
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      if (i != j) CHECK(ladder.number.entries()(i, j) == std::complex<double>(0.0, 0.0));
    }
  }
  // the product c^dag c agrees only up to rounding in the sqrt factors
  const Eigen::MatrixXcd product =
      ladder.creation.entries() * ladder.annihilation.entries();
  CHECK((product - ladder.number.entries()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(ladder.number.is_hermitian());
}

TEST_CASE("expectation values of the number operator") {
  const auto ladder = make_ladder(2);
  const FockVector one = FockVector::basis_state(2, 1);
  CHECK(expectation(one, ladder.number).real() == doctest::Approx(1.0).epsilon(1e-14));

  const FockVector mix = testsupport::superposition(2, {{0, 1.0}, {2, 1.0}});
  CHECK(expectation(mix, ladder.number).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(expectation(mix, ladder.number).imag()) <= 1e-14);

  const FockVector vacuum = FockVector::basis_state(2, 0);
  CHECK(expectation(vacuum, ladder.number).real() == doctest::Approx(0.0));

  SUBCASE("rejects unnormalized states and mismatched dimensions") {
    const FockVector doubled(2, {{2.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}});
    CHECK_THROWS_AS(expectation(doubled, ladder.number), std::invalid_argument);
    const FockVector other = FockVector::basis_state(5, 1);
    CHECK_THROWS_AS(expectation(other, ladder.number), std::invalid_argument);
  }
}

TEST_CASE("number expansion probabilities") {
  const FockVector one = FockVector::basis_state(3, 1);
  const auto p1 = number_expansion(one);
  CHECK(p1.probabilities[0] == 0.0);
  CHECK(p1.probabilities[1] == 1.0);
  CHECK(p1.probabilities[2] == 0.0);

  const FockVector mix = testsupport::superposition(3, {{0, 1.0}, {2, 1.0}});
  const auto p2 = number_expansion(mix);
  CHECK(p2.probabilities[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p2.probabilities[1] == 0.0);
  CHECK(p2.probabilities[2] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p2.sum() == doctest::Approx(1.0).epsilon(1e-14));

  const FockVector three = testsupport::superposition(3, {{0, 1.0}, {1, 1.0}, {2, 1.0}});
  const auto p3 = number_expansion(three);
  for (int n = 0; n <= 2; ++n) {
    CHECK(p3.probabilities[n] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }
  CHECK(p3.mean() == doctest::Approx(1.0).epsilon(1e-13));

  const FockVector doubled(3, {{2.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}});
  CHECK_THROWS_AS(number_expansion(doubled), std::invalid_argument);
}

TEST_CASE("normalize then expand is idempotent in the probabilities") {
  auto rng = seeded_engine(11);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXcd raw(6);
    for (int i = 0; i < 6; ++i) raw(i) = 3.7 * standard_complex_gaussian(rng);
    const FockVector once = FockVector(raw).normalized();
    const FockVector twice = once.normalized();
    const auto pa = number_expansion(once);
    const auto pb = number_expansion(twice);
    for (int n = 0; n < 6; ++n) {
      CHECK(pa.probabilities[n] == doctest::Approx(pb.probabilities[n]).epsilon(1e-14));
    }
  }
}

TEST_CASE("expectation of N equals the expansion mean on random states") {
  const int n_max = 9;
  const auto ladder = make_ladder(n_max);
  const Subspace whole = full_space(n_max);
  auto rng = seeded_engine(202);
  for (int rep = 0; rep < 100; ++rep) {
    const FockVector psi = sample_state_in_subspace(whole, rng);
    const double via_operator = expectation(psi, ladder.number).real();
    const double via_expansion = number_expansion(psi).mean();
    CHECK(std::abs(via_operator - via_expansion) <= 1e-12);
  }
}

TEST_CASE("subspace sampling is seeded and Haar on the subspace") {
  const Subspace fixture = testsupport::fixture_subspace();

  SUBCASE("one-dimensional subspaces return the ray up to phase") {
    const Subspace ray(4, {FockVector::basis_state(4, 1)});
    const FockVector sampled = sample_state_in_subspace(ray, 99);
    CHECK(std::abs(sampled.amplitude(1)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sampled.is_normalized());
  }

  SUBCASE("fixed seeds reproduce bit-identical states") {
    const FockVector a = sample_state_in_subspace(fixture, 42);
    const FockVector b = sample_state_in_subspace(fixture, 42);
    CHECK((a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("sampling an empty subspace is an error") {
    const Subspace empty(4, {});
    CHECK_THROWS_AS(sample_state_in_subspace(empty, 0), std::invalid_argument);
  }

  SUBCASE("Monte Carlo mean photon number matches the exact subspace value") {
    // Exact Haar average of <N> over a subspace is tr(P N) / dim; use a
    // subspace on which <N> genuinely fluctuates.
    const Subspace skewed(
        4, {FockVector::basis_state(4, 1), FockVector::basis_state(4, 3)});
    const auto ladder = make_ladder(4);
    const Eigen::MatrixXcd b = skewed.basis_matrix();
    const double exact =
        (b.adjoint() * ladder.number.entries() * b).trace().real() / skewed.dimension();
    auto rng = seeded_engine(31415);
    const int samples = 10000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int s = 0; s < samples; ++s) {
      const double value =
          expectation(sample_state_in_subspace(skewed, rng), ladder.number).real();
      sum += value;
      sum_sq += value * value;
    }
    const double mean = sum / samples;
    const double variance = (sum_sq / samples - mean * mean) * samples / (samples - 1.0);
    const double sigma = std::sqrt(variance / samples);
    CHECK(exact == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sigma > 0.0);
    CHECK(std::abs(mean - exact) <= 3.0 * sigma);
  }
}

TEST_CASE("hermitian and unitary queries respect the tolerance") {
  Eigen::MatrixXcd h(2, 2);
  h << 1.0, std::complex<double>(0.0, 1.0), std::complex<double>(0.0, -1.0), 2.0;
  CHECK(OperatorMatrix(h).is_hermitian());
  h(0, 1) += 1e-6;
  CHECK_FALSE(OperatorMatrix(h).is_hermitian());
  CHECK(OperatorMatrix(h).is_hermitian(1e-3));

  Eigen::MatrixXcd u(2, 2);
  const double s = std::sqrt(0.5);
  u << s, s, -s, s;
  CHECK(OperatorMatrix(u).is_unitary());
  u(0, 0) += 1e-5;
  CHECK_FALSE(OperatorMatrix(u).is_unitary());
}
