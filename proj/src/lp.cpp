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

#include "lass0/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lass0 {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

class RevisedSimplex {
 public:
  RevisedSimplex(const MatrixXd& A, const VectorXd& b, const VectorXd& c,
                 const SimplexOptions& opts)
      : m_(A.rows()), n_(A.cols()), A_(A), b_(b), c_(c), opts_(opts) {
    row_sign_ = VectorXd::Ones(m_);
    for (Index i = 0; i < m_; ++i) {
      if (b_(i) < 0) {
        row_sign_(i) = -1.0;
        A_.row(i) *= -1.0;
        b_(i) = -b_(i);
      }
    }
    basic_.resize(m_);
    position_.assign(n_ + m_, -1);
    for (Index i = 0; i < m_; ++i) {
      basic_[i] = n_ + i;
      position_[n_ + i] = i;
    }
    binv_ = MatrixXd::Identity(m_, m_);
    xb_ = b_;
    max_iterations_ = opts_.max_iterations > 0
                          ? opts_.max_iterations
                          : static_cast<int>(50 * (m_ + n_) + 100);
  }

  LpResult run() {
    LpResult result;
    // Phase one.
    VectorXd cost = VectorXd::Zero(n_ + m_);
    cost.tail(m_).setOnes();
    LpStatus st = iterate(cost, /*phase_two=*/false);
    if (st == LpStatus::kIterationLimit) return finish(st);
    double infeas = 0.0;
    for (Index i = 0; i < m_; ++i)
      if (basic_[i] >= n_) infeas += std::max(xb_(i), 0.0);
    const double scale = 1.0 + b_.lpNorm<Eigen::Infinity>();
    if (infeas > opts_.feasibility_tol * scale) {
      return finish(LpStatus::kInfeasible);
    }
    drive_out_artificials();

    // Phase two.
    cost.setZero();
    cost.head(n_) = c_;
    st = iterate(cost, /*phase_two=*/true);
    return finish(st);
  }

 private:
  Eigen::Ref<const VectorXd> column(Index j, VectorXd& scratch) const {
    if (j < n_) return A_.col(j);
    scratch.setZero(m_);
    scratch(j - n_) = 1.0;
    return scratch;
  }

  void pivot(Index row, Index entering, const VectorXd& w, double theta) {
    xb_ -= theta * w;
    xb_(row) = theta;
    const Index leaving = basic_[row];
    position_[leaving] = -1;
    basic_[row] = entering;
    position_[entering] = row;

    const double wr = w(row);
    binv_.row(row) /= wr;
    for (Index i = 0; i < m_; ++i) {
      if (i != row && w(i) != 0.0) binv_.row(i) -= w(i) * binv_.row(row);
    }
    if (++since_refactor_ >= opts_.refactor_every) refactor();
  }

  void refactor() {
    since_refactor_ = 0;
    MatrixXd B(m_, m_);
    VectorXd scratch;
    for (Index i = 0; i < m_; ++i) B.col(i) = column(basic_[i], scratch);
    Eigen::PartialPivLU<MatrixXd> lu(B);
    binv_ = lu.inverse();
    xb_ = lu.solve(b_);
  }

  LpStatus iterate(const VectorXd& cost, bool phase_two) {
    bool bland = false;
    int degenerate_run = 0;
    VectorXd scratch;
    for (;;) {
      if (iterations_ >= max_iterations_) return LpStatus::kIterationLimit;

      VectorXd cb(m_);
      for (Index i = 0; i < m_; ++i) cb(i) = cost(basic_[i]);
      const VectorXd y = binv_.transpose() * cb;
      VectorXd d = cost.head(n_) - A_.transpose() * y;

      Index entering = -1;
      double best = -opts_.cost_tol;
      for (Index j = 0; j < n_; ++j) {
        if (position_[j] >= 0) continue;
        if (d(j) < best) {
          entering = j;
          if (bland) break;
          best = d(j);
        }
      }
      if (!phase_two && entering < 0) {
        for (Index i = 0; i < m_; ++i) {
          const Index j = n_ + i;
          if (position_[j] >= 0) continue;
          if (cost(j) - y(i) < best) {
            entering = j;
            if (bland) break;
            best = cost(j) - y(i);
          }
        }
      }
      if (entering < 0) return LpStatus::kOptimal;

      const VectorXd w = binv_ * column(entering, scratch);
      Index row = -1;
      double theta = std::numeric_limits<double>::infinity();
      double row_w = 0.0;
      for (Index i = 0; i < m_; ++i) {
        if (phase_two && basic_[i] >= n_ && std::abs(w(i)) > opts_.pivot_tol) {
          // Artificial kept on a redundant row must stay at zero.
          theta = 0.0;
          row = i;
          break;
        }
        if (w(i) <= opts_.pivot_tol) continue;
        const double ratio = std::max(xb_(i), 0.0) / w(i);
        const double slack = 1e-12 * (1.0 + ratio);
        if (row < 0 || ratio < theta - slack) {
          theta = ratio;
          row = i;
          row_w = w(i);
        } else if (ratio <= theta + slack &&
                   (bland ? basic_[i] < basic_[row] : w(i) > row_w)) {
          theta = std::min(theta, ratio);
          row = i;
          row_w = w(i);
        }
      }
      if (row < 0) return LpStatus::kUnbounded;

      ++iterations_;
      if (theta <= 1e-12) {
        if (++degenerate_run > 25) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      pivot(row, entering, w, theta);
    }
  }

  void drive_out_artificials() {
    VectorXd scratch;
    for (Index r = 0; r < m_; ++r) {
      if (basic_[r] < n_) continue;
      const Eigen::RowVectorXd rho = binv_.row(r) * A_;
      Index best = -1;
      double best_abs = 1e-7;
      for (Index j = 0; j < n_; ++j) {
        if (position_[j] >= 0) continue;
        if (std::abs(rho(j)) > best_abs) {
          best_abs = std::abs(rho(j));
          best = j;
        }
      }
      if (best < 0) continue;  // redundant row
      xb_(r) = 0.0;
      const VectorXd w = binv_ * column(best, scratch);
      pivot(r, best, w, 0.0);
    }
  }

  LpResult finish(LpStatus st) {
    LpResult result;
    result.status = st;
    result.iterations = iterations_;
    if (st != LpStatus::kOptimal) return result;
    MatrixXd B(m_, m_);
    VectorXd scratch;
    VectorXd cb(m_);
    for (Index i = 0; i < m_; ++i) {
      B.col(i) = column(basic_[i], scratch);
      cb(i) = basic_[i] < n_ ? c_(basic_[i]) : 0.0;
    }
    Eigen::PartialPivLU<MatrixXd> lu(B);
    const VectorXd xb = lu.solve(b_);
    const VectorXd y = lu.transpose().solve(cb);
    result.x = VectorXd::Zero(n_);
    for (Index i = 0; i < m_; ++i) {
      if (basic_[i] < n_) result.x(basic_[i]) = std::max(xb(i), 0.0);
    }
    result.y = y.cwiseProduct(row_sign_);
    result.objective = c_.dot(result.x);
    return result;
  }

  Index m_, n_;
  MatrixXd A_;
  VectorXd b_, c_;
  SimplexOptions opts_;
  VectorXd row_sign_;
  std::vector<Index> basic_;
  std::vector<Index> position_;
  MatrixXd binv_;
  VectorXd xb_;
  int iterations_ = 0;
  int max_iterations_ = 0;
  int since_refactor_ = 0;
};

double max_step(const VectorXd& v, const VectorXd& dv) {
  double alpha = 1.0;
  for (Index i = 0; i < v.size(); ++i) {
    if (dv(i) < 0) alpha = std::min(alpha, -v(i) / dv(i));
  }
  return alpha;
}

}  // namespace

LpResult solve_lp_simplex(const MatrixXd& A, const VectorXd& b,
                          const VectorXd& c, const SimplexOptions& opts) {
  if (A.rows() != b.size() || A.cols() != c.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "solve_lp_simplex: shapes");
  }
  return RevisedSimplex(A, b, c, opts).run();
}

LpResult solve_lp_interior(const MatrixXd& A, const VectorXd& b,
                           const VectorXd& c,
                           const InteriorPointOptions& opts) {
  const Index m = A.rows();
  const Index n = A.cols();
  if (m != b.size() || n != c.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "solve_lp_interior: shapes");
  }
  LpResult result;

  // Mehrotra's starting point.
  Eigen::LLT<MatrixXd> aat(A * A.transpose());
  if (aat.info() != Eigen::Success) {
    result.status = LpStatus::kIterationLimit;
    return result;
  }
  VectorXd x = A.transpose() * aat.solve(b);
  VectorXd y = aat.solve(A * c);
  VectorXd s = c - A.transpose() * y;
  x.array() += std::max(-1.5 * x.minCoeff(), 0.0);
  s.array() += std::max(-1.5 * s.minCoeff(), 0.0);
  {
    const double xs = x.dot(s);
    const double dx = 0.5 * xs / std::max(s.sum(), 1e-300);
    const double ds = 0.5 * xs / std::max(x.sum(), 1e-300);
    x.array() += dx;
    s.array() += ds;
    if (!(x.minCoeff() > 0)) x.array() += 1.0;
    if (!(s.minCoeff() > 0)) s.array() += 1.0;
  }

  const double bscale = 1.0 + b.lpNorm<Eigen::Infinity>();
  const double cscale = 1.0 + c.lpNorm<Eigen::Infinity>();

  MatrixXd AD(m, n);
  for (int it = 0; it < opts.max_iterations; ++it) {
    const VectorXd rb = A * x - b;
    const VectorXd rc = A.transpose() * y + s - c;
    const double mu = x.dot(s) / static_cast<double>(n);
    const double pobj = c.dot(x);
    const double dobj = b.dot(y);
    const double rp = rb.lpNorm<Eigen::Infinity>() / bscale;
    const double rd = rc.lpNorm<Eigen::Infinity>() / cscale;
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    const bool converged = rp <= opts.tol && rd <= opts.tol && gap <= opts.tol;
    // Once mu is negligible the normal equations carry no more accuracy;
    // accept a slightly looser point rather than wander off.
    const bool stalled = mu <= 1e-14 * (1.0 + std::abs(pobj)) &&
                         rp <= opts.stall_tol && rd <= opts.stall_tol &&
                         gap <= opts.stall_tol;
    if (converged || stalled) {
      result.status = LpStatus::kOptimal;
      result.x = x;
      result.y = y;
      result.objective = pobj;
      result.iterations = it;
      return result;
    }

    const VectorXd d = x.cwiseQuotient(s);
    AD = A * d.asDiagonal();
    MatrixXd normal = AD * A.transpose();
    Eigen::LLT<MatrixXd> llt(normal);
    if (llt.info() != Eigen::Success) {
      normal.diagonal().array() += 1e-14 * (1.0 + normal.diagonal().maxCoeff());
      llt.compute(normal);
      if (llt.info() != Eigen::Success) break;
    }

    auto solve = [&](const VectorXd& rxs, VectorXd& dx, VectorXd& dy,
                     VectorXd& ds) {
      const VectorXd sinv_rxs = rxs.cwiseQuotient(s);
      const VectorXd rhs = -rb + A * sinv_rxs - AD * rc;
      dy = llt.solve(rhs);
      ds = -rc - A.transpose() * dy;
      dx = -sinv_rxs - d.cwiseProduct(ds);
    };

    VectorXd dx_aff, dy_aff, ds_aff;
    const VectorXd xs = x.cwiseProduct(s);
    solve(xs, dx_aff, dy_aff, ds_aff);
    const double ap_aff = max_step(x, dx_aff);
    const double ad_aff = max_step(s, ds_aff);
    const double mu_aff =
        (x + ap_aff * dx_aff).dot(s + ad_aff * ds_aff) / static_cast<double>(n);
    const double sigma = std::pow(mu_aff / std::max(mu, 1e-300), 3.0);

    VectorXd dx, dy, ds;
    VectorXd rxs = xs + dx_aff.cwiseProduct(ds_aff);
    rxs.array() -= sigma * mu;
    solve(rxs, dx, dy, ds);

    const double ap = std::min(1.0, opts.step_fraction * max_step(x, dx));
    const double ad = std::min(1.0, opts.step_fraction * max_step(s, ds));
    x += ap * dx;
    y += ad * dy;
    s += ad * ds;
    result.iterations = it + 1;
    if (!x.allFinite() || !y.allFinite() || !s.allFinite()) break;
  }
  result.status = LpStatus::kIterationLimit;
  result.x = x;
  result.y = y;
  result.objective = c.dot(x);
  return result;
}

}  // namespace lass0
