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

#ifndef LASS0_LASSO_ZERO_HPP
#define LASS0_LASSO_ZERO_HPP

#include <optional>

#include "lass0/bp.hpp"
#include "lass0/stats.hpp"

namespace lass0 {

enum class ThresholdRule { kHard, kSoft };

enum class DictionaryScalingKind {
  kAuto,               // match_standardized if X is standardized, else quantile
  kRaw,                // plain N(0, 1) entries
  kMatchStandardized,  // center and scale each column to sd 1
  kMatchQuantile,      // common column norm matched on ||X'e||_inf quantiles
};

struct DictionaryScaling {
  DictionaryScalingKind kind = DictionaryScalingKind::kAuto;
  double alpha = 0.05;
  int mc_draws = 1000;
};

struct LassoZeroConfig {
  std::optional<Index> q;  // dictionary width; n when unset
  int M = 30;
  ThresholdRule threshold_rule = ThresholdRule::kHard;
  DictionaryScaling dictionary_scaling;
  std::uint64_t seed = 1;
  ToleranceConfig tol;
  int threads = 1;

  Index width(Index n) const { return q.value_or(n); }
  // A zero-width dictionary makes every replicate identical.
  int replicates(Index n) const { return width(n) == 0 ? 1 : M; }
  void validate() const;
};

struct LassoZeroFit {
  VectorXd beta_l1;
  MatrixXd replicate_betas;   // M x p
  MatrixXd replicate_gammas;  // M x q
  double tau = 0.0;
  ThresholdRule rule = ThresholdRule::kHard;
  VectorXd beta_hat;
  SupportSet support;
};

// Componentwise median over the rows of an M x p matrix.
template <typename Derived>
Vector<typename Derived::Scalar> median_aggregate(
    const Eigen::MatrixBase<Derived>& replicates) {
  using Scalar = typename Derived::Scalar;
  if (replicates.rows() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "median_aggregate needs M >= 1");
  }
  Vector<Scalar> out(replicates.cols());
  std::vector<Scalar> buf(replicates.rows());
  for (Index j = 0; j < replicates.cols(); ++j) {
    for (Index k = 0; k < replicates.rows(); ++k) buf[k] = replicates(k, j);
    out(j) = median(buf);
  }
  return out;
}

template <typename Scalar>
Scalar threshold_scalar(Scalar x, Scalar tau, ThresholdRule rule) {
  if (std::abs(x) <= tau) return Scalar(0);
  if (rule == ThresholdRule::kHard) return x;
  return x > 0 ? x - tau : x + tau;
}

// eta_tau applied componentwise: zero when |x| <= tau, sign kept otherwise.
template <typename Derived>
Vector<typename Derived::Scalar> apply_threshold(
    const Eigen::MatrixBase<Derived>& beta, typename Derived::Scalar tau,
    ThresholdRule rule = ThresholdRule::kHard) {
  using Scalar = typename Derived::Scalar;
  if (!(tau >= Scalar(0))) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be >= 0");
  }
  return beta.unaryExpr(
      [tau, rule](Scalar x) { return threshold_scalar(x, tau, rule); });
}

DictionaryScalingKind resolve_scaling(DictionaryScalingKind kind,
                                      const DesignMatrix& X);

// Upper-alpha quantile of ||A' e||_inf over the columns e of noise.
double max_correlation_quantile(const MatrixXd& A, const MatrixXd& noise,
                                double alpha);

// Rescales a raw Gaussian dictionary so its columns live on the same scale
// as the design. rng supplies the shared noise draws of the quantile rule.
MatrixXd scale_dictionary(const MatrixXd& G, const DesignMatrix& X,
                          const DictionaryScaling& rule, SeededRng rng);

// Quantile rule with explicit noise draws (n x mc_draws) and, optionally,
// a precomputed design-side quantile.
MatrixXd scale_dictionary_quantile(const MatrixXd& G, const MatrixXd& noise,
                                   double alpha, double design_quantile);

// Builds the scaled noise dictionary of replicate k exactly as fit() does
// for the same design, config and stream.
class DictionaryFactory {
 public:
  DictionaryFactory(const DesignMatrix& X, const LassoZeroConfig& cfg,
                    SeededRng rng);
  MatrixXd make(Index k) const;

 private:
  SeededRng rng_;
  Index n_;
  Index q_;
  DictionaryScalingKind kind_;
  double alpha_;
  MatrixXd noise_;
  double design_quantile_ = 0.0;
};

// Runs the M extended-BP replicates and aggregates them; thresholds at tau.
// When X is standardized the response is centered first.
LassoZeroFit fit(const DesignMatrix& X, const ResponseVector& y,
                 const LassoZeroConfig& cfg, double tau);
// Same, with the dictionary streams drawn from rng instead of cfg.seed.
LassoZeroFit fit(const DesignMatrix& X, const ResponseVector& y,
                 const LassoZeroConfig& cfg, double tau, SeededRng rng);

// Re-thresholds an existing fit without re-solving.
LassoZeroFit rethreshold(LassoZeroFit fit, double tau, ThresholdRule rule);

}  // namespace lass0

#endif  // LASS0_LASSO_ZERO_HPP
