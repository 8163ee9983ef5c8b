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

#include "doctest.h"
#include "lass0/lp.hpp"

using namespace lass0;

TEST_CASE("simplex: textbook LP") {
  // min -x1 - 2 x2  s.t. x1 + x2 + s1 = 4, x1 + 3 x2 + s2 = 6
  // optimum at x = (3, 1), objective -5.
  MatrixXd A(2, 4);
  A << 1, 1, 1, 0,
       1, 3, 0, 1;
  VectorXd b(2), c(4);
  b << 4, 6;
  c << -1, -2, 0, 0;
  const LpResult r = solve_lp_simplex(A, b, c);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(-5.0));
  CHECK(r.x(0) == doctest::Approx(3.0));
  CHECK(r.x(1) == doctest::Approx(1.0));
  CHECK(b.dot(r.y) == doctest::Approx(-5.0));
  CHECK((c - A.transpose() * r.y).minCoeff() > -1e-12);

  const LpResult ip = solve_lp_interior(A, b, c);
  REQUIRE(ip.status == LpStatus::kOptimal);
  CHECK(ip.objective == doctest::Approx(-5.0).epsilon(1e-9));
}

TEST_CASE("simplex: infeasible and unbounded") {
  MatrixXd A(2, 2);
  A << 1, 1,
       1, 1;
  VectorXd b(2);
  b << 1, 2;
  CHECK(solve_lp_simplex(A, b, VectorXd::Ones(2)).status ==
        LpStatus::kInfeasible);

  MatrixXd U(1, 2);
  U << 1, -1;
  VectorXd bu(1);
  bu << 1;
  VectorXd cu(2);
  cu << -1, 0;
  CHECK(solve_lp_simplex(U, bu, cu).status == LpStatus::kUnbounded);
}

TEST_CASE("simplex: redundant rows and negative right-hand sides") {
  MatrixXd A(3, 3);
  A << 1, 1, 0,
       0, 1, 1,
       1, 2, 1;  // row 3 = row 1 + row 2
  VectorXd b(3);
  b << -1, -2, -3;
  MatrixXd An = -A;  // feasible after flipping
  const LpResult r = solve_lp_simplex(An, b, VectorXd::Ones(3));
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK((An * r.x - b).lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK(r.objective == doctest::Approx(2.0));
  CHECK(b.dot(r.y) == doctest::Approx(2.0));
}

TEST_CASE("interior point and simplex agree on random feasible LPs") {
  SeededRng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    SeededRng t = rng.child(trial);
    const Index m = 4 + trial % 5;
    const Index n = 3 * m;
    const MatrixXd A = gaussian_matrix(t.child(0), m, n);
    VectorXd x0 = gaussian_vector(t.child(1), n).cwiseAbs();
    const VectorXd b = A * x0;
    const VectorXd c = gaussian_vector(t.child(2), n).cwiseAbs().array() + 0.1;
    const LpResult s = solve_lp_simplex(A, b, c);
    const LpResult ip = solve_lp_interior(A, b, c);
    REQUIRE(s.status == LpStatus::kOptimal);
    REQUIRE(ip.status == LpStatus::kOptimal);
    CHECK(std::abs(s.objective - ip.objective) <= 1e-8 * (1 + s.objective));
    CHECK((A * s.x - b).lpNorm<Eigen::Infinity>() < 1e-9);
    CHECK(s.x.minCoeff() >= 0.0);
    CHECK(std::abs(b.dot(s.y) - s.objective) <= 1e-9 * (1 + s.objective));
  }
}
