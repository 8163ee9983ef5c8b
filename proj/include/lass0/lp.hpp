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

#ifndef LASS0_LP_HPP
#define LASS0_LP_HPP

#include "lass0/core.hpp"

namespace lass0 {

// Dense linear programs in standard form:
//
//   minimize  c'x   subject to  A x = b,  x >= 0.
//
// Both solvers report the dual vector y of the equality constraints, so
// c - A'y >= 0 and c'x = b'y certify optimality.

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  VectorXd x;
  VectorXd y;
  double objective = 0.0;
  int iterations = 0;
};

struct SimplexOptions {
  int max_iterations = 0;  // 0: 50 * (rows + cols)
  double pivot_tol = 1e-9;
  double cost_tol = 1e-10;
  double feasibility_tol = 1e-9;
  int refactor_every = 64;
};

// Two-phase revised simplex with an explicit basis inverse. Phase one
// minimizes the sum of artificial variables; redundant equality rows are
// tolerated. Dantzig pricing, switching to Bland's rule on stalls.
LpResult solve_lp_simplex(const MatrixXd& A, const VectorXd& b,
                          const VectorXd& c, const SimplexOptions& opts = {});

struct InteriorPointOptions {
  int max_iterations = 200;
  double tol = 1e-10;
  double stall_tol = 1e-7;
  double step_fraction = 0.995;
};

// Mehrotra predictor-corrector on the normal equations. A must have full
// row rank; the returned point is strictly interior (no crossover).
LpResult solve_lp_interior(const MatrixXd& A, const VectorXd& b,
                           const VectorXd& c,
                           const InteriorPointOptions& opts = {});

}  // namespace lass0

#endif  // LASS0_LP_HPP
