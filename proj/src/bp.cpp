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

#include "lass0/bp.hpp"

#include <cmath>
#include <sstream>

#include "lass0/lp.hpp"

namespace lass0 {

namespace {

struct L1Solve {
  VectorXd x;     // length N
  VectorXd dual;  // length n
  int iterations = 0;
};

// Rows of A that span its row space, chosen by column-pivoted QR of A'.
std::vector<Index> independent_rows(const MatrixXd& A) {
  Eigen::ColPivHouseholderQR<MatrixXd> qr(A.transpose());
  qr.setThreshold(1e-10);
  const Index r = qr.rank();
  std::vector<Index> rows(r);
  for (Index i = 0; i < r; ++i) rows[i] = qr.colsPermutation().indices()(i);
  std::sort(rows.begin(), rows.end());
  return rows;
}

// Moves x onto {A x = y} while keeping its support: the minimum-norm
// correction restricted to the current nonzeros. Entries that cross zero
// or fall under zero_tol (relative to the largest entry) are dropped and
// the correction repeated.
void polish(const MatrixXd& A, const VectorXd& y, double rel_zero_tol,
            VectorXd& x) {
  const double zero_tol = rel_zero_tol * x.lpNorm<Eigen::Infinity>();
  for (int round = 0; round < 8; ++round) {
    std::vector<Index> support;
    for (Index j = 0; j < x.size(); ++j) {
      if (std::abs(x(j)) < zero_tol) {
        x(j) = 0.0;
      } else {
        support.push_back(j);
      }
    }
    if (support.empty()) return;
    MatrixXd As(A.rows(), static_cast<Index>(support.size()));
    VectorXd xs(static_cast<Index>(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k) {
      As.col(k) = A.col(support[k]);
      xs(k) = x(support[k]);
    }
    const VectorXd r = y - As * xs;
    const VectorXd corrected =
        xs + Eigen::CompleteOrthogonalDecomposition<MatrixXd>(As).solve(r);
    bool stable = true;
    for (std::size_t k = 0; k < support.size(); ++k) {
      const double before = xs(k);
      const double after = corrected(k);
      if (std::abs(after) < zero_tol || (before > 0) != (after > 0)) {
        stable = false;
      }
      x(support[k]) = after;
    }
    if (stable) return;
  }
  for (Index j = 0; j < x.size(); ++j)
    if (std::abs(x(j)) < zero_tol) x(j) = 0.0;
}

void scale_dual_feasible(const MatrixXd& A, VectorXd& dual) {
  if (A.cols() == 0 || dual.size() == 0) return;
  const double m = (A.transpose() * dual).lpNorm<Eigen::Infinity>();
  if (m > 1.0) dual /= m;
}

L1Solve solve_l1_unit(const MatrixXd& A, const VectorXd& y,
                      const ToleranceConfig& tol) {
  const Index n = A.rows();
  const Index N = A.cols();
  if (y.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "response length " + std::to_string(y.size()) +
                    " does not match " + std::to_string(n) + " rows");
  }
  if (!y.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "response has non-finite entries");
  }
  L1Solve out;
  out.x = VectorXd::Zero(N);
  out.dual = VectorXd::Zero(n);
  if (y.lpNorm<Eigen::Infinity>() == 0.0) return out;
  if (N == 0) {
    throw Error(ErrorCode::kInfeasible, "no columns to fit a nonzero response");
  }

  // Phase one: restrict to independent rows and check consistency.
  std::vector<Index> rows = independent_rows(A);
  const Index r = static_cast<Index>(rows.size());
  const double feas_scale = std::max(1.0, y.lpNorm<Eigen::Infinity>());
  MatrixXd Ar(r, N);
  VectorXd yr(r);
  for (Index i = 0; i < r; ++i) {
    Ar.row(i) = A.row(rows[i]);
    yr(i) = y(rows[i]);
  }
  if (r < n) {
    const VectorXd x0 =
        Eigen::CompleteOrthogonalDecomposition<MatrixXd>(Ar).solve(yr);
    const double res = (A * x0 - y).lpNorm<Eigen::Infinity>();
    if (res > tol.feas_tol * feas_scale) {
      std::ostringstream msg;
      msg << "y is not in the range of the design (least-squares residual "
          << res << ")";
      throw Error(ErrorCode::kInfeasible, msg.str());
    }
  }

  MatrixXd Alp(r, 2 * N);
  Alp.leftCols(N) = Ar;
  Alp.rightCols(N) = -Ar;
  const VectorXd c = VectorXd::Ones(2 * N);

  auto accept = [&](const LpResult& lp) {
    VectorXd x = lp.x.head(N) - lp.x.tail(N);
    polish(A, y, tol.zero_tol, x);
    if ((A * x - y).lpNorm<Eigen::Infinity>() > tol.feas_tol * feas_scale)
      return false;
    out.x = std::move(x);
    out.dual.setZero();
    for (Index i = 0; i < r; ++i) out.dual(rows[i]) = lp.y(i);
    scale_dual_feasible(A, out.dual);
    out.iterations += lp.iterations;
    return true;
  };

  if (tol.method == BpMethod::kInteriorPoint) {
    InteriorPointOptions ipo;
    ipo.max_iterations = tol.max_iterations;
    const LpResult lp = solve_lp_interior(Alp, yr, c, ipo);
    out.iterations = lp.iterations;
    if (lp.status == LpStatus::kOptimal && accept(lp)) return out;
  }
  const LpResult lp = solve_lp_simplex(Alp, yr, c);
  if (lp.status == LpStatus::kInfeasible) {
    throw Error(ErrorCode::kInfeasible, "phase one found no feasible point");
  }
  if (lp.status != LpStatus::kOptimal || !accept(lp)) {
    throw Error(ErrorCode::kNotConverged,
                "basis pursuit did not converge after " +
                    std::to_string(out.iterations + lp.iterations) +
                    " iterations (" + to_string(lp.status) + ")");
  }
  return out;
}

// Solves on y / |y|_inf so every tolerance is relative to the response.
L1Solve solve_l1(const MatrixXd& A, const VectorXd& y,
                 const ToleranceConfig& tol) {
  const double scale = y.allFinite() ? y.lpNorm<Eigen::Infinity>() : 0.0;
  if (!(scale > 0.0)) return solve_l1_unit(A, y, tol);
  L1Solve out = solve_l1_unit(A, y / scale, tol);
  out.x *= scale;
  return out;
}

}  // namespace

std::string CertificateReport::describe() const {
  std::ostringstream os;
  os << (ok ? "certified" : "NOT certified")
     << ": feasibility=" << feasibility_violation
     << " dual=" << dual_violation << " gap=" << duality_gap
     << " (bound " << gap_bound << ")";
  return os.str();
}

BpSolution solve_bp(const MatrixXd& X, const VectorXd& y,
                    const ToleranceConfig& tol) {
  L1Solve s = solve_l1(X, y, tol);
  BpSolution sol;
  sol.beta = std::move(s.x);
  sol.dual = std::move(s.dual);
  sol.iterations = s.iterations;
  sol.residual_norm = (y - X * sol.beta).lpNorm<Eigen::Infinity>();
  sol.objective = sol.beta.lpNorm<1>();
  return sol;
}

BpSolution solve_bp(const DesignMatrix& X, const ResponseVector& y,
                    const ToleranceConfig& tol) {
  return solve_bp(X.values(), y, tol);
}

ExtendedBpSolution solve_extended_bp(const MatrixXd& X, const MatrixXd& G,
                                     const VectorXd& y,
                                     const ToleranceConfig& tol) {
  if (G.rows() != X.rows() && G.cols() > 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "noise dictionary must have as many rows as the design");
  }
  const Index p = X.cols();
  const Index q = G.cols();
  MatrixXd A(X.rows(), p + q);
  A.leftCols(p) = X;
  if (q > 0) A.rightCols(q) = G;
  L1Solve s = solve_l1(A, y, tol);
  ExtendedBpSolution sol;
  sol.beta = s.x.head(p);
  sol.gamma = s.x.tail(q);
  sol.dual = std::move(s.dual);
  sol.iterations = s.iterations;
  sol.residual_norm = (y - A * s.x).lpNorm<Eigen::Infinity>();
  sol.objective = s.x.lpNorm<1>();
  return sol;
}

ExtendedBpSolution solve_extended_bp(const DesignMatrix& X, const MatrixXd& G,
                                     const ResponseVector& y,
                                     const ToleranceConfig& tol) {
  return solve_extended_bp(X.values(), G, y, tol);
}

BpSolution solve_l1_limit(const MatrixXd& X, const VectorXd& y,
                          const ToleranceConfig& tol) {
  try {
    return solve_bp(X, y, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInfeasible) throw;
  }
  // Every least-squares minimizer solves X'X beta = X'y.
  return solve_bp(MatrixXd(X.transpose() * X), VectorXd(X.transpose() * y),
                  tol);
}

namespace {

CertificateReport certify(const VectorXd& coef, const VectorXd& dual,
                          const MatrixXd& A, const VectorXd& y,
                          const ToleranceConfig& tol) {
  CertificateReport rep;
  const double objective = coef.lpNorm<1>();
  rep.feasibility_violation = (y - A * coef).lpNorm<Eigen::Infinity>();
  const double dual_norm =
      A.cols() > 0 ? (A.transpose() * dual).lpNorm<Eigen::Infinity>() : 0.0;
  rep.dual_violation = std::max(0.0, dual_norm - 1.0);
  rep.duality_gap = std::abs(dual.dot(y) - objective);
  rep.gap_bound = tol.cert_tol * (1.0 + objective);
  rep.ok = rep.feasibility_violation <= tol.feas_tol &&
           rep.dual_violation <= tol.cert_tol &&
           rep.duality_gap <= rep.gap_bound;
  return rep;
}

}  // namespace

CertificateReport check_certificate(const BpSolution& sol, const MatrixXd& X,
                                    const VectorXd& y,
                                    const ToleranceConfig& tol) {
  return certify(sol.beta, sol.dual, X, y, tol);
}

CertificateReport check_certificate(const ExtendedBpSolution& sol,
                                    const MatrixXd& X, const MatrixXd& G,
                                    const VectorXd& y,
                                    const ToleranceConfig& tol) {
  MatrixXd A(X.rows(), X.cols() + G.cols());
  A.leftCols(X.cols()) = X;
  if (G.cols() > 0) A.rightCols(G.cols()) = G;
  VectorXd coef(X.cols() + G.cols());
  coef << sol.beta, sol.gamma;
  return certify(coef, sol.dual, A, y, tol);
}

}  // namespace lass0
