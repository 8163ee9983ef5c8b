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

#include "lass0/theory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lass0/bp.hpp"
#include "lass0/lp.hpp"
#include "lass0/parallel.hpp"

namespace lass0 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SupportSet checked_support(const SupportSet& S0, Index p) {
  SupportSet s = S0;
  std::sort(s.begin(), s.end());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] < 0 || s[k] >= p) {
      throw Error(ErrorCode::kInvalidArgument,
                  "support index " + std::to_string(s[k] + 1) +
                      " outside 1.." + std::to_string(p));
    }
    if (k > 0 && s[k] == s[k - 1]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "support index " + std::to_string(s[k] + 1) + " repeated");
    }
  }
  return s;
}

SupportSet complement(const SupportSet& S, Index p) {
  SupportSet out;
  std::size_t k = 0;
  for (Index j = 0; j < p; ++j) {
    if (k < S.size() && S[k] == j) {
      ++k;
    } else {
      out.push_back(j);
    }
  }
  return out;
}

MatrixXd take_rows(const MatrixXd& A, const SupportSet& rows) {
  MatrixXd out(static_cast<Index>(rows.size()), A.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) out.row(k) = A.row(rows[k]);
  return out;
}

MatrixXd take_cols(const MatrixXd& A, const SupportSet& cols) {
  MatrixXd out(A.rows(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(k) = A.col(cols[k]);
  return out;
}

double l1_on(const VectorXd& v, const SupportSet& S) {
  double s = 0.0;
  for (Index j : S) s += std::abs(v(j));
  return s;
}

Json finite_or_null(double v) {
  return std::isfinite(v) ? Json(v) : Json(nullptr);
}

}  // namespace

SnspReport snsp_constant(const MatrixXd& X, const SupportSet& S0) {
  const Index p = X.cols();
  const SupportSet S = checked_support(S0, p);
  if (static_cast<Index>(S.size()) > kMaxSnspSupport) {
    throw Error(ErrorCode::kEnumerationTooLarge,
                "|S0| = " + std::to_string(S.size()) + " exceeds " +
                    std::to_string(kMaxSnspSupport));
  }
  const MatrixXd N = kernel_basis(X);
  const Index d = N.cols();
  if (d > kMaxKernelDim) {
    throw Error(ErrorCode::kEnumerationTooLarge,
                "kernel dimension " + std::to_string(d) + " exceeds " +
                    std::to_string(kMaxKernelDim));
  }
  SnspReport rep;
  rep.kernel_dim = d;
  rep.witness = VectorXd::Zero(p);
  if (d == 0 || S.empty()) {
    rep.certified = true;
    return rep;
  }
  const SupportSet Sc = complement(S, p);
  const MatrixXd NS = take_rows(N, S);
  const MatrixXd NSc = take_rows(N, Sc);

  // A kernel direction vanishing off S makes the ratio unbounded.
  const MatrixXd K = Sc.empty() ? MatrixXd::Identity(d, d) : kernel_basis(NSc);
  if (K.cols() > 0) {
    rep.rho_star = kInf;
    rep.upper_bound = kInf;
    rep.certified = true;
    rep.witness = N * K.col(0);
    return rep;
  }

  // Variables [z+, z-, t, a, b, w]; t >= |N_Sc z|, sum t + w = 1.
  const Index m = static_cast<Index>(Sc.size());
  const Index cols = 2 * d + 3 * m + 1;
  MatrixXd A = MatrixXd::Zero(2 * m + 1, cols);
  for (Index i = 0; i < m; ++i) {
    A.block(i, 0, 1, d) = -NSc.row(i);
    A.block(i, d, 1, d) = NSc.row(i);
    A(i, 2 * d + i) = 1.0;
    A(i, 2 * d + m + i) = -1.0;
    A.block(m + i, 0, 1, d) = NSc.row(i);
    A.block(m + i, d, 1, d) = -NSc.row(i);
    A(m + i, 2 * d + i) = 1.0;
    A(m + i, 2 * d + 2 * m + i) = -1.0;
  }
  A.block(2 * m, 2 * d, 1, m).setOnes();
  A(2 * m, cols - 1) = 1.0;
  VectorXd b = VectorXd::Zero(2 * m + 1);
  b(2 * m) = 1.0;

  const Index s = static_cast<Index>(S.size());
  bool certified = true;
  double best = -1.0;
  double upper = 0.0;
  // Patterns s and -s give the same value, so the first sign is fixed.
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (s - 1)); ++mask) {
    VectorXd sign = VectorXd::Ones(s);
    for (Index k = 1; k < s; ++k)
      if (mask & (std::uint64_t(1) << (k - 1))) sign(k) = -1.0;
    const VectorXd gain = NS.transpose() * sign;
    VectorXd c = VectorXd::Zero(cols);
    c.head(d) = -gain;
    c.segment(d, d) = gain;
    const LpResult lp = solve_lp_simplex(A, b, c);
    ++rep.lp_solves;
    if (lp.status == LpStatus::kUnbounded) {
      // Cannot happen once N_Sc has a trivial kernel; guard anyway.
      throw Error(ErrorCode::kUnboundedRatio,
                  "sign-pattern LP unbounded despite trivial kernel of N_Sc");
    }
    if (lp.status != LpStatus::kOptimal) {
      throw Error(ErrorCode::kNotConverged,
                  std::string("sign-pattern LP: ") + to_string(lp.status));
    }
    const VectorXd z = lp.x.head(d) - lp.x.segment(d, d);
    VectorXd beta = N * z;
    const double off = l1_on(beta, Sc);
    const double on = l1_on(beta, S);
    if (off > 0.0 && on / off > best) {
      best = on / off;
      rep.witness = beta / off;
    }
    const VectorXd reduced = c - A.transpose() * lp.y;
    if (reduced.minCoeff() < -1e-8) certified = false;
    upper = std::max(upper, -lp.y(2 * m));
  }
  rep.rho_star = std::max(best, 0.0);
  rep.upper_bound = upper;
  rep.certified =
      certified && std::abs(upper - rep.rho_star) <= 1e-6 * std::max(1.0, upper);
  return rep;
}

double uniform_ir_constant(const MatrixXd& X, const SupportSet& S0) {
  const Index p = X.cols();
  const SupportSet S = checked_support(S0, p);
  const SupportSet Sc = complement(S, p);
  if (S.empty() || Sc.empty()) return 0.0;
  const MatrixXd XS = take_cols(X, S);
  const Eigen::JacobiSVD<MatrixXd> svd(XS);
  const VectorXd& sv = svd.singularValues();
  if (static_cast<Index>(S.size()) > X.rows() ||
      sv(sv.size() - 1) <= 1e-10 * sv(0)) {
    throw Error(ErrorCode::kSingularGram,
                "X_S0' X_S0 is singular (|S0| = " + std::to_string(S.size()) +
                    ")");
  }
  const MatrixXd gram = XS.transpose() * XS;
  // Rows of W = X_Sc' X_S (X_S' X_S)^{-1}; the max over sign vectors of
  // |W t|_inf is the largest row l1 norm.
  const MatrixXd Wt = gram.ldlt().solve(XS.transpose() * take_cols(X, Sc));
  return Wt.cwiseAbs().colwise().sum().maxCoeff();
}

double c_rho(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "C_rho needs rho in [0, 1)");
  }
  return 2.0 * (3.0 + rho) / (1.0 - rho);
}

bool signs_recovered(const VectorXd& estimate, const VectorXd& beta0) {
  if (estimate.size() != beta0.size()) return false;
  for (Index j = 0; j < beta0.size(); ++j) {
    const int a = (estimate(j) > 0) - (estimate(j) < 0);
    const int b = (beta0(j) > 0) - (beta0(j) < 0);
    if (a != b) return false;
  }
  return true;
}

Theorem1Record verify_theorem1(const MatrixXd& X, const VectorXd& beta0,
                               const VectorXd& noise,
                               const ToleranceConfig& tol) {
  const SnspReport rep = snsp_constant(X, support_of(beta0));
  if (!rep.finite() || rep.rho_star >= 1.0) {
    std::ostringstream msg;
    msg << "stable null space property fails (rho* = " << rep.rho_star << ")";
    throw Error(ErrorCode::kInvalidArgument, msg.str());
  }
  return verify_theorem1(X, beta0, noise, rep.rho_star, tol);
}

Theorem1Record verify_theorem1(const MatrixXd& X, const VectorXd& beta0,
                               const VectorXd& noise, double rho_star,
                               const ToleranceConfig& tol) {
  const Index n = X.rows();
  const Index p = X.cols();
  if (beta0.size() != p || noise.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "beta0 needs " + std::to_string(p) + " entries and noise " +
                    std::to_string(n));
  }
  const Index rank = numerical_rank(X);
  if (rank != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "needs rank(X) = n, got " + std::to_string(rank) + " < " +
                    std::to_string(n));
  }
  Theorem1Record r;
  r.rho_star = rho_star;
  r.c_rho = c_rho(rho_star);
  r.noise_l1 = solve_bp(X, noise, tol).beta.lpNorm<1>();
  const SupportSet S = support_of(beta0);
  r.beta_min = kInf;
  for (Index j : S) r.beta_min = std::min(r.beta_min, std::abs(beta0(j)));
  r.premise_held = r.beta_min > r.c_rho * r.noise_l1;

  const VectorXd y = X * beta0 + noise;
  r.beta_l1 = solve_bp(X, y, tol).beta;
  r.constructive_tau = (3.0 + rho_star) / (1.0 - rho_star) * r.noise_l1;
  r.constructive_tau_worked = signs_recovered(
      apply_threshold(r.beta_l1, r.constructive_tau, ThresholdRule::kHard),
      beta0);

  std::vector<double> mags;
  for (Index j = 0; j < p; ++j) mags.push_back(std::abs(r.beta_l1(j)));
  mags.push_back(0.0);
  std::sort(mags.begin(), mags.end());
  mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
  for (std::size_t k = 0; k + 1 < mags.size(); ++k) {
    const double tau = 0.5 * (mags[k] + mags[k + 1]);
    if (signs_recovered(apply_threshold(r.beta_l1, tau, ThresholdRule::kHard),
                        beta0)) {
      r.sweep_worked = true;
      r.sweep_tau = tau;
      break;
    }
  }
  return r;
}

Prop2Record verify_prop2(const MatrixXd& X, const SupportSet& S0,
                         double slack) {
  Prop2Record r;
  r.theta = uniform_ir_constant(X, S0);
  if (r.theta >= 1.0) {
    r.vacuous = true;
    r.rho_star = std::numeric_limits<double>::quiet_NaN();
    r.message = "theta >= 1: nothing to check";
    return r;
  }
  r.rho_star = snsp_constant(X, S0).rho_star;
  r.holds = r.rho_star <= r.theta + slack;
  if (!r.holds) {
    std::ostringstream msg;
    msg << "rho* = " << r.rho_star << " exceeds theta = " << r.theta;
    r.message = msg.str();
  }
  return r;
}

L0Solution l0_oracle(const MatrixXd& X, const VectorXd& y, Index k_max,
                     double residual_tol) {
  const Index n = X.rows();
  const Index p = X.cols();
  if (y.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "response length mismatch");
  }
  if (p > kMaxL0Columns || k_max > kMaxL0Size) {
    throw Error(ErrorCode::kEnumerationTooLarge,
                "l0 search limited to p <= " + std::to_string(kMaxL0Columns) +
                    " and k <= " + std::to_string(kMaxL0Size));
  }
  if (k_max < 0) {
    throw Error(ErrorCode::kInvalidArgument, "k_max must be nonnegative");
  }
  const double cutoff = residual_tol * std::max(1.0, y.lpNorm<Eigen::Infinity>());
  L0Solution out;
  out.beta = VectorXd::Zero(p);
  out.residual = y.lpNorm<Eigen::Infinity>();
  if (out.residual <= cutoff) return out;
  for (Index k = 1; k <= std::min(k_max, p); ++k) {
    SupportSet idx(k);
    for (Index i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      const MatrixXd XS = take_cols(X, idx);
      const VectorXd coef = XS.colPivHouseholderQr().solve(y);
      const double res = (XS * coef - y).lpNorm<Eigen::Infinity>();
      if (res <= cutoff) {
        out.support = idx;
        out.residual = res;
        for (Index i = 0; i < k; ++i) out.beta(idx[i]) = coef(i);
        return out;
      }
      Index i = k - 1;
      while (i >= 0 && idx[i] == p - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (Index j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw Error(ErrorCode::kNotFound,
              "no exact solution with at most " + std::to_string(k_max) +
                  " nonzeros");
}

Prop3Result verify_prop3(const MatrixXd& X, const VectorXd& beta0,
                         const Prop3Options& opts) {
  const Index n = X.rows();
  const Index p = X.cols();
  if (beta0.size() != p) {
    throw Error(ErrorCode::kDimensionMismatch,
                "beta0 needs " + std::to_string(p) + " entries");
  }
  const Index rank = numerical_rank(X);
  if (rank != p) {
    throw Error(ErrorCode::kInvalidArgument,
                "needs full column rank, got rank " + std::to_string(rank) +
                    " < p = " + std::to_string(p));
  }
  if (opts.runs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "runs must be positive");
  }
  const DesignMatrix D(X);
  LassoZeroConfig cfg;
  cfg.q = 0;
  cfg.M = 1;
  Prop3Result out;
  out.runs = opts.runs;
  out.tau = opts.tau ? *opts.tau
                     : known_sigma_threshold(D, cfg, opts.sigma, opts.alpha,
                                             opts.calibration_R, opts.seed,
                                             &out.warnings);
  const SupportSet S = support_of(beta0);
  const VectorXd signal = X * beta0;
  const SeededRng noise_root(opts.seed, 1);
  std::vector<char> any_false(static_cast<std::size_t>(opts.runs), 0);
  parallel_for(any_false.size(), opts.threads, [&](std::size_t r) {
    const VectorXd y =
        signal + gaussian_vector(noise_root.child(r), n, opts.sigma);
    const LassoZeroFit f = fit(D, y, cfg, out.tau);
    for (Index j : f.support) {
      if (!std::binary_search(S.begin(), S.end(), j)) {
        any_false[r] = 1;
        break;
      }
    }
  });
  for (char c : any_false) out.false_discovery_runs += c;
  out.fwer = static_cast<double>(out.false_discovery_runs) / opts.runs;
  out.se = std::sqrt(opts.alpha * (1.0 - opts.alpha) / opts.runs);
  return out;
}

namespace {

// Evaluates draws in parallel batches and keeps accepted ones in draw
// order, so results do not depend on the thread count.
template <typename Slot, typename Draw>
int collect_draws(int wanted, int max_draws, int threads,
                  std::vector<Slot>& accepted, Draw&& draw) {
  int next = 0;
  int rejected = 0;
  const int batch = std::max(wanted, 16);
  while (static_cast<int>(accepted.size()) < wanted && next < max_draws) {
    const int count = std::min(batch, max_draws - next);
    std::vector<std::optional<Slot>> slots(static_cast<std::size_t>(count));
    parallel_for(slots.size(), threads,
                 [&](std::size_t i) { slots[i] = draw(next + static_cast<int>(i)); });
    for (auto& s : slots) {
      if (static_cast<int>(accepted.size()) == wanted) break;
      if (s) {
        accepted.push_back(std::move(*s));
      } else {
        ++rejected;
      }
    }
    next += count;
  }
  if (static_cast<int>(accepted.size()) < wanted) {
    throw Error(ErrorCode::kTooManyFailures,
                "only " + std::to_string(accepted.size()) + " of " +
                    std::to_string(wanted) + " instances accepted after " +
                    std::to_string(max_draws) + " draws");
  }
  return rejected;
}

}  // namespace

Theorem1Campaign run_theorem1_campaign(const Theorem1CampaignOptions& opts) {
  if (opts.s0 < 1 || opts.s0 > opts.p || opts.n > opts.p || opts.instances < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bad campaign dimensions");
  }
  if (!(opts.margin > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "margin must exceed 1");
  }
  using Slot = std::pair<Theorem1Record, SupportSet>;
  const SeededRng root(opts.seed);
  auto draw = [&](int d) -> std::optional<Slot> {
    const SeededRng rng = root.child(static_cast<std::uint64_t>(d));
    const MatrixXd X = gaussian_matrix(rng.child(0), opts.n, opts.p);
    SeededRng pick = rng.child(1);
    const SupportSet S = sample_without_replacement(pick, opts.p, opts.s0);
    if (numerical_rank(X) != opts.n) return std::nullopt;
    const SnspReport rep = snsp_constant(X, S);
    if (!rep.finite() || rep.rho_star >= 1.0) return std::nullopt;
    const VectorXd noise = gaussian_vector(rng.child(2), opts.n, opts.sigma);
    const double noise_l1 = solve_bp(X, noise).beta.lpNorm<1>();
    const double floor = c_rho(rep.rho_star) * noise_l1;
    SeededRng amp = rng.child(3);
    VectorXd beta0 = VectorXd::Zero(opts.p);
    for (Index j : S) {
      const double scale = opts.margin * (1.0 + amp.uniform());
      const double mag = floor > 0.0 ? scale * floor : scale;
      beta0(j) = amp.below(2) == 0 ? mag : -mag;
    }
    return Slot{verify_theorem1(X, beta0, noise, rep.rho_star), S};
  };
  std::vector<Slot> accepted;
  Theorem1Campaign out;
  out.rejected_draws = collect_draws(
      opts.instances, opts.max_draws > 0 ? opts.max_draws : 50 * opts.instances,
      opts.threads, accepted, draw);
  for (auto& [rec, S] : accepted) {
    if (rec.counterexample()) ++out.counterexamples;
    if (rec.premise_held && rec.sweep_worked && !rec.constructive_tau_worked)
      ++out.constructive_failures;
    out.records.push_back(std::move(rec));
    out.supports.push_back(std::move(S));
  }
  return out;
}

Prop2Campaign run_prop2_campaign(const Prop2CampaignOptions& opts) {
  if (opts.support_sizes.empty() || opts.instances < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bad campaign settings");
  }
  using Slot = std::pair<Prop2Record, SupportSet>;
  const SeededRng root(opts.seed);
  auto draw = [&](int d) -> std::optional<Slot> {
    const SeededRng rng = root.child(static_cast<std::uint64_t>(d));
    const Index s = opts.support_sizes[static_cast<std::size_t>(d) %
                                       opts.support_sizes.size()];
    const MatrixXd X = gaussian_matrix(rng.child(0), opts.n, opts.p);
    SeededRng pick = rng.child(1);
    const SupportSet S = sample_without_replacement(pick, opts.p, s);
    Prop2Record rec = verify_prop2(X, S);
    if (rec.vacuous) return std::nullopt;
    return Slot{std::move(rec), S};
  };
  std::vector<Slot> accepted;
  Prop2Campaign out;
  out.rejected_draws = collect_draws(
      opts.instances, opts.max_draws > 0 ? opts.max_draws : 50 * opts.instances,
      opts.threads, accepted, draw);
  for (auto& [rec, S] : accepted) {
    if (!rec.holds) ++out.violations;
    out.records.push_back(std::move(rec));
    out.supports.push_back(std::move(S));
  }
  return out;
}

Json to_json(const SnspReport& r) {
  return Json{{"rho_star", finite_or_null(r.rho_star)},
              {"bounded", r.finite()},
              {"kernel_dim", r.kernel_dim},
              {"upper_bound", finite_or_null(r.upper_bound)},
              {"certified", r.certified},
              {"witness", to_json(r.witness)}};
}

Json to_json(const Theorem1Record& r) {
  Json j{{"rho_star", r.rho_star}};
  j["theta"] = r.theta ? Json(*r.theta) : Json(nullptr);
  j["c_rho"] = r.c_rho;
  j["noise_l1"] = r.noise_l1;
  j["beta_min"] = finite_or_null(r.beta_min);
  j["premise_held"] = r.premise_held;
  j["constructive_tau"] = r.constructive_tau;
  j["constructive_tau_worked"] = r.constructive_tau_worked;
  j["sweep_worked"] = r.sweep_worked;
  j["sweep_tau"] = r.sweep_tau ? Json(*r.sweep_tau) : Json(nullptr);
  return j;
}

Json to_json(const Prop2Record& r) {
  return Json{{"theta", r.theta},
              {"rho_star", finite_or_null(r.rho_star)},
              {"vacuous", r.vacuous},
              {"holds", r.holds},
              {"message", r.message}};
}

Json to_json(const Prop3Result& r) {
  return Json{{"tau", r.tau},
              {"runs", r.runs},
              {"false_discovery_runs", r.false_discovery_runs},
              {"fwer", r.fwer},
              {"se", r.se},
              {"warnings", r.warnings}};
}

Json to_json(const Theorem1Campaign& c) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < c.records.size(); ++i) {
    Json j = to_json(c.records[i]);
    j["support"] = support_to_json(c.supports[i]);
    rows.push_back(std::move(j));
  }
  return Json{{"instances", c.records.size()},
              {"rejected_draws", c.rejected_draws},
              {"counterexamples", c.counterexamples},
              {"constructive_failures", c.constructive_failures},
              {"records", std::move(rows)}};
}

Json to_json(const Prop2Campaign& c) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < c.records.size(); ++i) {
    Json j = to_json(c.records[i]);
    j["support"] = support_to_json(c.supports[i]);
    rows.push_back(std::move(j));
  }
  return Json{{"instances", c.records.size()},
              {"rejected_draws", c.rejected_draws},
              {"violations", c.violations},
              {"records", std::move(rows)}};
}

}  // namespace lass0
