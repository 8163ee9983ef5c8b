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

#include "lass0/lasso_zero.hpp"

#include "lass0/parallel.hpp"

namespace lass0 {

namespace {

// Stream id reserved for the noise draws of the quantile scaling rule;
// dictionary replicates use ids 0..M-1.
constexpr std::uint64_t kScalingNoiseStream = 0xFFFFFFFFULL;

MatrixXd unit_columns(const MatrixXd& G) {
  MatrixXd out = G;
  for (Index j = 0; j < out.cols(); ++j) {
    const double norm = out.col(j).norm();
    if (norm > 0.0) out.col(j) /= norm;
  }
  return out;
}

MatrixXd standardize_columns(const MatrixXd& G) {
  MatrixXd out = G.rowwise() - G.colwise().mean();
  for (Index j = 0; j < out.cols(); ++j) {
    const double sd = sample_sd(out.col(j));
    if (sd > 0.0) out.col(j) /= sd;
  }
  return out;
}

}  // namespace

void LassoZeroConfig::validate() const {
  if (q && *q < 0) throw Error(ErrorCode::kInvalidArgument, "q must be >= 0");
  if (M < 1) throw Error(ErrorCode::kInvalidArgument, "M must be >= 1");
  const auto& s = dictionary_scaling;
  if (s.kind == DictionaryScalingKind::kMatchQuantile ||
      s.kind == DictionaryScalingKind::kAuto) {
    if (!(s.alpha > 0.0 && s.alpha < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "dictionary scaling alpha must lie in (0, 1)");
    }
    if (s.mc_draws < 1) {
      throw Error(ErrorCode::kInvalidArgument, "mc_draws must be >= 1");
    }
  }
}

DictionaryScalingKind resolve_scaling(DictionaryScalingKind kind,
                                      const DesignMatrix& X) {
  if (kind != DictionaryScalingKind::kAuto) return kind;
  return X.standardized() ? DictionaryScalingKind::kMatchStandardized
                          : DictionaryScalingKind::kMatchQuantile;
}

double max_correlation_quantile(const MatrixXd& A, const MatrixXd& noise,
                                double alpha) {
  const MatrixXd corr = A.transpose() * noise;
  std::vector<double> stats(noise.cols());
  for (Index i = 0; i < noise.cols(); ++i)
    stats[i] = corr.col(i).lpNorm<Eigen::Infinity>();
  return upper_quantile(std::move(stats), alpha);
}

MatrixXd scale_dictionary_quantile(const MatrixXd& G, const MatrixXd& noise,
                                   double alpha, double design_quantile) {
  const MatrixXd unit = unit_columns(G);
  const double dict_quantile = max_correlation_quantile(unit, noise, alpha);
  if (!(dict_quantile > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "dictionary has no correlation with the noise draws");
  }
  return (design_quantile / dict_quantile) * unit;
}

MatrixXd scale_dictionary(const MatrixXd& G, const DesignMatrix& X,
                          const DictionaryScaling& rule, SeededRng rng) {
  if (G.rows() != X.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dictionary must have as many rows as the design");
  }
  switch (resolve_scaling(rule.kind, X)) {
    case DictionaryScalingKind::kRaw:
      return G;
    case DictionaryScalingKind::kMatchStandardized:
      return standardize_columns(G);
    case DictionaryScalingKind::kMatchQuantile:
    case DictionaryScalingKind::kAuto: {
      const MatrixXd noise = gaussian_matrix(rng, X.rows(), rule.mc_draws);
      const double xq = max_correlation_quantile(X.values(), noise, rule.alpha);
      return scale_dictionary_quantile(G, noise, rule.alpha, xq);
    }
  }
  return G;
}

DictionaryFactory::DictionaryFactory(const DesignMatrix& X,
                                     const LassoZeroConfig& cfg,
                                     SeededRng rng)
    : rng_(rng),
      n_(X.rows()),
      q_(cfg.width(X.rows())),
      kind_(resolve_scaling(cfg.dictionary_scaling.kind, X)),
      alpha_(cfg.dictionary_scaling.alpha) {
  if (kind_ == DictionaryScalingKind::kMatchQuantile && q_ > 0) {
    noise_ = gaussian_matrix(rng.child(kScalingNoiseStream), n_,
                             cfg.dictionary_scaling.mc_draws);
    design_quantile_ = max_correlation_quantile(X.values(), noise_, alpha_);
  }
}

MatrixXd DictionaryFactory::make(Index k) const {
  const MatrixXd raw = gaussian_matrix(rng_.child(k), n_, q_);
  switch (kind_) {
    case DictionaryScalingKind::kMatchQuantile:
      return scale_dictionary_quantile(raw, noise_, alpha_, design_quantile_);
    case DictionaryScalingKind::kMatchStandardized:
      return standardize_columns(raw);
    default:
      return raw;
  }
}

LassoZeroFit rethreshold(LassoZeroFit f, double tau, ThresholdRule rule) {
  f.tau = tau;
  f.rule = rule;
  f.beta_hat = apply_threshold(f.beta_l1, tau, rule);
  f.support = support_of(f.beta_hat);
  return f;
}

LassoZeroFit fit(const DesignMatrix& X, const ResponseVector& y,
                 const LassoZeroConfig& cfg, double tau) {
  return fit(X, y, cfg, tau, SeededRng(cfg.seed));
}

LassoZeroFit fit(const DesignMatrix& X, const ResponseVector& y,
                 const LassoZeroConfig& cfg, double tau, SeededRng rng) {
  cfg.validate();
  if (!(tau >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be >= 0");
  }
  if (y.size() != X.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "response length does not match design rows");
  }
  const Index n = X.rows();
  const Index p = X.cols();
  const Index q = cfg.width(n);
  const int M = cfg.replicates(n);

  // Centered columns sum to zero, so only the centered part of y can be
  // fitted exactly; the intercept is absorbed here.
  const VectorXd yc =
      X.centered() ? VectorXd(y.array() - y.mean()) : VectorXd(y);

  LassoZeroFit out;
  out.replicate_betas.resize(M, p);
  out.replicate_gammas.resize(M, q);

  if (q == 0) {
    // Thresholded basis pursuit (least squares when rank(X) = p < n).
    out.replicate_betas.row(0) = solve_l1_limit(X.values(), yc, cfg.tol).beta;
  } else {
    const DictionaryFactory dictionaries(X, cfg, rng);
    parallel_for(static_cast<std::size_t>(M), cfg.threads, [&](std::size_t k) {
      const MatrixXd G = dictionaries.make(static_cast<Index>(k));
      try {
        const ExtendedBpSolution s =
            solve_extended_bp(X.values(), G, yc, cfg.tol);
        out.replicate_betas.row(k) = s.beta;
        out.replicate_gammas.row(k) = s.gamma;
      } catch (const Error& e) {
        throw Error(e.code(), "replicate " + std::to_string(k) + ": " + e.detail());
      }
    });
  }
  out.beta_l1 = median_aggregate(out.replicate_betas);
  return rethreshold(std::move(out), tau, cfg.threshold_rule);
}

}  // namespace lass0
