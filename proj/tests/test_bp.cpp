// Copyright 2026 The lass0 Authors. All Rights Reserved.
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

#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "lass0/bp.hpp"

using namespace lass0;

namespace {

// Brute-force BP optimum: the LP optimum is attained at a basic solution, so
// enumerate every set of rank(A) linearly independent columns, solve, and
// keep the smallest l1 norm among exact solutions.
double brute_force_bp_objective(const MatrixXd& A, const VectorXd& y) {
  const Index n = A.rows();
  const Index p = A.cols();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> mask(p, 0);
  std::fill(mask.begin(), mask.begin() + n, 1);
  std::sort(mask.begin(), mask.end());
  do {
    MatrixXd As(n, n);
    std::vector<Index> cols;
    for (Index j = 0; j < p; ++j)
      if (mask[j]) cols.push_back(j);
    for (Index k = 0; k < n; ++k) As.col(k) = A.col(cols[k]);
    Eigen::FullPivLU<MatrixXd> lu(As);
    if (!lu.isInvertible()) continue;
    const VectorXd xs = lu.solve(y);
    if ((As * xs - y).norm() > 1e-9) continue;
    best = std::min(best, xs.lpNorm<1>());
  } while (std::next_permutation(mask.begin(), mask.end()));
  return best;
}

}  // namespace

TEST_CASE("solve_bp: identity design returns y") {
  VectorXd y(4);
  y << 1, -2, 0, 3.5;
  const BpSolution s = solve_bp(MatrixXd(MatrixXd::Identity(4, 4)), y);
  CHECK((s.beta - y).lpNorm<Eigen::Infinity>() < 1e-10);
  CHECK(s.objective == doctest::Approx(6.5));
  CHECK(check_certificate(s, MatrixXd::Identity(4, 4), y).ok);
}

TEST_CASE("solve_bp: [1 2] beta = 2 picks the cheaper vertex") {
  MatrixXd X(1, 2);
  X << 1, 2;
  VectorXd y(1);
  y << 2;
  // Vertices (2, 0) and (0, 1) have objectives 2 and 1.
  CHECK(brute_force_bp_objective(X, y) == doctest::Approx(1.0));
  for (BpMethod m : {BpMethod::kInteriorPoint, BpMethod::kSimplex}) {
    ToleranceConfig tol;
    tol.method = m;
    const BpSolution s = solve_bp(X, y, tol);
    CHECK(s.beta(0) == 0.0);
    CHECK(s.beta(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(check_certificate(s, X, y, tol).ok);
  }
}

TEST_CASE("solve_bp: zero response") {
  const MatrixXd X = gaussian_matrix(SeededRng(1), 3, 6);
  const BpSolution s = solve_bp(X, VectorXd::Zero(3));
  CHECK(s.beta.isZero(0));
  CHECK(s.objective == 0.0);
  CHECK(check_certificate(s, X, VectorXd::Zero(3)).ok);
}

TEST_CASE("solve_bp matches brute-force optimum on tiny instances") {
  SeededRng rng(5);
  for (int t = 0; t < 40; ++t) {
    const Index n = 2 + t % 3;
    const Index p = n + 3 + t % 3;
    const MatrixXd X = gaussian_matrix(rng.child(2 * t), n, p);
    const VectorXd y = gaussian_vector(rng.child(2 * t + 1), n);
    const double oracle = brute_force_bp_objective(X, y);
    for (BpMethod m : {BpMethod::kInteriorPoint, BpMethod::kSimplex}) {
      ToleranceConfig tol;
      tol.method = m;
      const BpSolution s = solve_bp(X, y, tol);
      CHECK(s.objective == doctest::Approx(oracle).epsilon(1e-8));
      CHECK(check_certificate(s, X, y, tol).ok);
    }
  }
}

TEST_CASE("solve_bp: scale equivariance") {
  SeededRng rng(17);
  for (int t = 0; t < 10; ++t) {
    const MatrixXd X = gaussian_matrix(rng.child(2 * t), 10, 25);
    const VectorXd y = gaussian_vector(rng.child(2 * t + 1), 10);
    const BpSolution a = solve_bp(X, y);
    for (double c : {0.01, 7.0, 1000.0}) {
      const BpSolution b = solve_bp(X, VectorXd(c * y));
      CHECK((b.beta - c * a.beta).lpNorm<Eigen::Infinity>() <=
            1e-7 * c * a.beta.lpNorm<Eigen::Infinity>());
    }
  }
}

TEST_CASE("solve_bp: rank-deficient design with consistent response") {
  // Centered segmentation design has rank n - 1; centered y lies in range.
  const Index n = 8;
  MatrixXd X = MatrixXd::Zero(n, n - 1);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n - 1; ++j) X(i, j) = i > j ? 1.0 : 0.0;
  X = X.rowwise() - X.colwise().mean();
  VectorXd y = gaussian_vector(SeededRng(8), n);
  y.array() -= y.mean();
  const BpSolution s = solve_bp(X, y);
  CHECK(check_certificate(s, X, y).ok);

  VectorXd bad = VectorXd::Ones(n);  // not centered: outside the range
  try {
    solve_bp(X, bad);
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInfeasible);
  }
}

TEST_CASE("solve_extended_bp examples") {
  SeededRng rng(21);
  const Index n = 6;
  SUBCASE("identity dictionary absorbs a small response") {
    // Columns of X have l2 norm 10, so any X-representation of y costs
    // more than y itself through the identity block; the certificate
    // confirms the optimum rather than assuming it.
    MatrixXd X = gaussian_matrix(rng.child(0), n, 9);
    for (Index j = 0; j < X.cols(); ++j) X.col(j) *= 10.0 / X.col(j).norm();
    const MatrixXd G = MatrixXd::Identity(n, n);
    VectorXd y(n);
    y << 0.01, -0.02, 0.0, 0.015, 0.0, -0.01;
    const ExtendedBpSolution s = solve_extended_bp(X, G, y);
    CHECK(check_certificate(s, X, G, y).ok);
    CHECK(s.objective <= y.lpNorm<1>() + 1e-12);
  }
  SUBCASE("zero response") {
    const MatrixXd X = gaussian_matrix(rng.child(1), n, 9);
    const MatrixXd G = gaussian_matrix(rng.child(2), n, n);
    const ExtendedBpSolution s = solve_extended_bp(X, G, VectorXd::Zero(n));
    CHECK(s.beta.isZero(0));
    CHECK(s.gamma.isZero(0));
  }
  SUBCASE("q = 0 reduces to plain BP") {
    const MatrixXd X = gaussian_matrix(rng.child(3), n, 15);
    const VectorXd y = gaussian_vector(rng.child(4), n);
    const ExtendedBpSolution e = solve_extended_bp(X, MatrixXd(n, 0), y);
    const BpSolution b = solve_bp(X, y);
    CHECK(e.gamma.size() == 0);
    CHECK((e.beta - b.beta).lpNorm<Eigen::Infinity>() < 1e-8);
  }
  SUBCASE("dictionary wider than n") {
    const MatrixXd X = gaussian_matrix(rng.child(5), n, 12);
    const MatrixXd G = gaussian_matrix(rng.child(6), n, n);
    const VectorXd y = gaussian_vector(rng.child(7), n);
    const ExtendedBpSolution s = solve_extended_bp(X, G, y);
    CHECK(check_certificate(s, X, G, y).ok);
    CHECK(s.beta.size() == 12);
    CHECK(s.gamma.size() == n);
  }
  CHECK_THROWS_AS(solve_extended_bp(MatrixXd(MatrixXd::Identity(3, 3)),
                                    MatrixXd::Identity(4, 4), VectorXd::Ones(3)),
                  Error);
}

TEST_CASE("check_certificate rejects broken solutions") {
  const MatrixXd X = gaussian_matrix(SeededRng(31), 5, 12);
  const VectorXd y = gaussian_vector(SeededRng(32), 5);
  const BpSolution s = solve_bp(X, y);
  REQUIRE(check_certificate(s, X, y).ok);

  BpSolution moved = s;
  moved.beta(3) += 1.0;
  const CertificateReport r1 = check_certificate(moved, X, y);
  CHECK(!r1.ok);
  // The violation equals the recomputed residual norm.
  CHECK(r1.feasibility_violation ==
        doctest::Approx((y - X * moved.beta).lpNorm<Eigen::Infinity>()));
  CHECK(r1.feasibility_violation > 1e-3);

  BpSolution zero_dual = s;
  zero_dual.dual.setZero();
  const CertificateReport r2 = check_certificate(zero_dual, X, y);
  CHECK(!r2.ok);
  CHECK(r2.duality_gap == doctest::Approx(s.objective));
  CHECK(r2.describe().find("NOT certified") != std::string::npos);
}

TEST_CASE("solve_l1_limit falls back to least squares for tall designs") {
  const MatrixXd X = gaussian_matrix(SeededRng(41), 20, 4);
  const VectorXd y = gaussian_vector(SeededRng(42), 20);
  CHECK_THROWS_AS(solve_bp(X, y), Error);
  const BpSolution s = solve_l1_limit(X, y);
  const VectorXd ls = X.colPivHouseholderQr().solve(y);
  CHECK((s.beta - ls).lpNorm<Eigen::Infinity>() < 1e-9);
}
