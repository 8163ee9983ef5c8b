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

#ifndef LASS0_BP_HPP
#define LASS0_BP_HPP

#include <string>

#include "lass0/core.hpp"

namespace lass0 {

enum class BpMethod { kInteriorPoint, kSimplex };

// feas_tol is relative to |y|_inf; zero_tol is relative to the
// largest coefficient magnitude.
struct ToleranceConfig {
  double feas_tol = 1e-8;
  double cert_tol = 1e-7;
  double zero_tol = 1e-8;
  int max_iterations = 200;
  BpMethod method = BpMethod::kInteriorPoint;
};

// minimize ||beta||_1 subject to y = X beta.
struct BpSolution {
  VectorXd beta;
  VectorXd dual;
  double residual_norm = 0.0;  // ||y - X beta||_inf
  int iterations = 0;
  double objective = 0.0;      // ||beta||_1
};

// minimize ||beta||_1 + ||gamma||_1 subject to y = X beta + G gamma.
struct ExtendedBpSolution {
  VectorXd beta;
  VectorXd gamma;
  VectorXd dual;
  double residual_norm = 0.0;
  int iterations = 0;
  double objective = 0.0;
};

struct CertificateReport {
  bool ok = false;
  double feasibility_violation = 0.0;  // ||y - X beta (- G gamma)||_inf
  double dual_violation = 0.0;         // max(0, ||A' dual||_inf - 1)
  double duality_gap = 0.0;            // |dual' y - objective|
  double gap_bound = 0.0;              // cert_tol * (1 + objective)

  std::string describe() const;
};

BpSolution solve_bp(const DesignMatrix& X, const ResponseVector& y,
                    const ToleranceConfig& tol = {});
BpSolution solve_bp(const MatrixXd& X, const VectorXd& y,
                    const ToleranceConfig& tol = {});

ExtendedBpSolution solve_extended_bp(const DesignMatrix& X, const MatrixXd& G,
                                     const ResponseVector& y,
                                     const ToleranceConfig& tol = {});
ExtendedBpSolution solve_extended_bp(const MatrixXd& X, const MatrixXd& G,
                                     const VectorXd& y,
                                     const ToleranceConfig& tol = {});

// Minimum-l1 point among the least-squares minimizers, i.e. the limit of
// the Lasso path as the penalty vanishes. Equals solve_bp whenever y lies
// in the range of X; equals the least-squares fit when rank(X) = p.
BpSolution solve_l1_limit(const MatrixXd& X, const VectorXd& y,
                          const ToleranceConfig& tol = {});

CertificateReport check_certificate(const BpSolution& sol, const MatrixXd& X,
                                    const VectorXd& y,
                                    const ToleranceConfig& tol = {});
CertificateReport check_certificate(const ExtendedBpSolution& sol,
                                    const MatrixXd& X, const MatrixXd& G,
                                    const VectorXd& y,
                                    const ToleranceConfig& tol = {});

}  // namespace lass0

#endif  // LASS0_BP_HPP
