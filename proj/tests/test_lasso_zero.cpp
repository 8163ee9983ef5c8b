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
#include "lass0/lasso_zero.hpp"

using namespace lass0;

namespace {

DesignMatrix random_standardized(std::uint64_t seed, Index n, Index p) {
  return standardize(DesignMatrix(gaussian_matrix(SeededRng(seed), n, p)));
}

LassoZeroConfig small_config(int M = 5) {
  LassoZeroConfig cfg;
  cfg.M = M;
  cfg.seed = 77;
  return cfg;
}

}  // namespace

TEST_CASE("median_aggregate conventions") {
  MatrixXd one(1, 3);
  one << 1, -2, 3;
  CHECK(median_aggregate(one) == VectorXd(one.row(0).transpose()));

  MatrixXd two(2, 1);
  two << 1, 3;
  CHECK(median_aggregate(two)(0) == 2.0);

  MatrixXd five(5, 1);
  five << 5, -5, 0, 0, 0;
  CHECK(median_aggregate(five)(0) == 0.0);

  MatrixXd three(3, 1);
  three << -1, 0, 2;
  CHECK(median_aggregate(three)(0) == 0.0);

  CHECK_THROWS_AS(median_aggregate(MatrixXd(0, 2)), Error);
}

TEST_CASE("apply_threshold examples") {
  VectorXd x(1);
  x << 0.4;
  CHECK(apply_threshold(x, 0.4, ThresholdRule::kHard)(0) == 0.0);
  x << 1.0;
  CHECK(apply_threshold(x, 0.4, ThresholdRule::kSoft)(0) ==
        doctest::Approx(0.6));
  VectorXd v(5);
  v << -3, 0, 1e-300, 2, -1e-12;
  const VectorXd h = apply_threshold(v, 0.0, ThresholdRule::kHard);
  const VectorXd s = apply_threshold(v, 0.0, ThresholdRule::kSoft);
  CHECK(h == v);
  CHECK(s == v);
  CHECK_THROWS_AS(apply_threshold(v, -1.0), Error);
}

TEST_CASE("thresholding properties on random vectors") {
  SeededRng rng(12);
  for (int t = 0; t < 200; ++t) {
    const VectorXd b = gaussian_vector(rng.child(t), 30);
    const double t1 = rng.uniform() * 2.0;
    const double t2 = t1 + rng.uniform();
    for (ThresholdRule rule : {ThresholdRule::kHard, ThresholdRule::kSoft}) {
      const VectorXd a1 = apply_threshold(b, t1, rule);
      const VectorXd a2 = apply_threshold(b, t2, rule);
      for (Index j = 0; j < b.size(); ++j) {
        // Support monotone in tau; signs preserved or zeroed.
        if (a2(j) != 0.0) CHECK(a1(j) != 0.0);
        if (a1(j) != 0.0) CHECK((a1(j) > 0) == (b(j) > 0));
        if (std::abs(b(j)) <= t1) CHECK(a1(j) == 0.0);
      }
    }
  }
}

TEST_CASE("config validation") {
  LassoZeroConfig cfg;
  cfg.M = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.M = 3;
  cfg.q = -1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.q = 0;
  CHECK(cfg.replicates(10) == 1);
  cfg.q.reset();
  CHECK(cfg.width(10) == 10);
  CHECK(cfg.replicates(10) == 3);
}

TEST_CASE("scale_dictionary: match_standardized") {
  const DesignMatrix X = random_standardized(1, 20, 30);
  const MatrixXd G = gaussian_matrix(SeededRng(2), 20, 20) * 3.0;
  DictionaryScaling rule;
  rule.kind = DictionaryScalingKind::kMatchStandardized;
  const MatrixXd S = scale_dictionary(G, X, rule, SeededRng(3));
  for (Index j = 0; j < S.cols(); ++j) {
    CHECK(std::abs(sample_sd(S.col(j)) - 1.0) < 1e-10);
    CHECK(std::abs(S.col(j).mean()) < 1e-12);
  }
  CHECK(resolve_scaling(DictionaryScalingKind::kAuto, X) ==
        DictionaryScalingKind::kMatchStandardized);
}

TEST_CASE("scale_dictionary: match_quantile") {
  const Index n = 15;
  // Common column norm c0 = 2.5.
  MatrixXd G = gaussian_matrix(SeededRng(4), n, 12);
  for (Index j = 0; j < G.cols(); ++j) G.col(j) *= 2.5 / G.col(j).norm();
  const DesignMatrix same(G);
  CHECK(resolve_scaling(DictionaryScalingKind::kAuto, same) ==
        DictionaryScalingKind::kMatchQuantile);
  DictionaryScaling rule;
  rule.kind = DictionaryScalingKind::kMatchQuantile;
  rule.alpha = 0.05;
  rule.mc_draws = 1000;
  const MatrixXd S = scale_dictionary(gaussian_matrix(SeededRng(4), n, 12),
                                      same, rule, SeededRng(5));
  for (Index j = 0; j < S.cols(); ++j) {
    CHECK(std::abs(S.col(j).norm() - 2.5) < 0.02 * 2.5);
  }

  // Doubling the noise level of the shared draws leaves the scale alone.
  const DesignMatrix X(gaussian_matrix(SeededRng(6), n, 14) * 0.7);
  const MatrixXd noise = gaussian_matrix(SeededRng(7), n, 500);
  const MatrixXd raw = gaussian_matrix(SeededRng(8), n, n);
  const MatrixXd a = scale_dictionary_quantile(
      raw, noise, 0.1, max_correlation_quantile(X.values(), noise, 0.1));
  const MatrixXd noise2 = 2.0 * noise;
  const MatrixXd b = scale_dictionary_quantile(
      raw, noise2, 0.1, max_correlation_quantile(X.values(), noise2, 0.1));
  CHECK((a - b).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("fit: q = 0 reduces to thresholded basis pursuit") {
  const DesignMatrix X = random_standardized(9, 10, 25);
  const VectorXd y = gaussian_vector(SeededRng(10), 10);
  LassoZeroConfig cfg = small_config();
  cfg.q = 0;
  const VectorXd yc = y.array() - y.mean();
  const BpSolution bp = solve_bp(X, yc);
  const LassoZeroFit f0 = fit(X, y, cfg, 0.0);
  CHECK(f0.replicate_betas.rows() == 1);
  CHECK(f0.replicate_gammas.cols() == 0);
  CHECK(f0.beta_hat == bp.beta);
  const LassoZeroFit f = fit(X, y, cfg, 0.3);
  CHECK(f.beta_hat == apply_threshold(bp.beta, 0.3));
}

TEST_CASE("fit: invariants, determinism and empty model") {
  const DesignMatrix X = random_standardized(13, 12, 30);
  VectorXd beta0 = VectorXd::Zero(30);
  beta0(2) = 3.0;
  beta0(7) = -3.0;
  const VectorXd y = X.values() * beta0 + gaussian_vector(SeededRng(14), 12, 0.3);
  const LassoZeroConfig cfg = small_config(6);
  const LassoZeroFit f = fit(X, y, cfg, 0.5);
  REQUIRE(f.replicate_betas.rows() == 6);
  REQUIRE(f.replicate_gammas.cols() == 12);
  for (Index j = 0; j < 30; ++j) {
    std::vector<double> col(6);
    for (Index k = 0; k < 6; ++k) col[k] = f.replicate_betas(k, j);
    CHECK(f.beta_l1(j) == median(col));
    if (std::abs(f.beta_l1(j)) <= 0.5) {
      CHECK(f.beta_hat(j) == 0.0);
    } else {
      CHECK((f.beta_hat(j) > 0) == (f.beta_l1(j) > 0));
    }
  }
  CHECK(f.support == support_of(f.beta_hat));

  const LassoZeroFit again = fit(X, y, cfg, 0.5);
  CHECK(again.replicate_betas == f.replicate_betas);
  CHECK(again.replicate_gammas == f.replicate_gammas);

  const LassoZeroFit empty =
      fit(X, y, cfg, f.beta_l1.lpNorm<Eigen::Infinity>());
  CHECK(empty.support.empty());
  CHECK(empty.beta_hat.isZero(0));

  LassoZeroConfig threaded = cfg;
  threaded.threads = 3;
  CHECK(fit(X, y, threaded, 0.5).replicate_betas == f.replicate_betas);
}

TEST_CASE("fit: each replicate solves its extended basis pursuit") {
  SUBCASE("standardized design") {
    const DesignMatrix X = random_standardized(15, 8, 16);
    const VectorXd y = gaussian_vector(SeededRng(16), 8);
    const LassoZeroConfig cfg = small_config(3);
    const LassoZeroFit f = fit(X, y, cfg, 0.0);
    const DictionaryFactory dict(X, cfg, SeededRng(cfg.seed));
    const VectorXd yc = y.array() - y.mean();
    for (Index k = 0; k < 3; ++k) {
      const MatrixXd G = dict.make(k);
      const ExtendedBpSolution s = solve_extended_bp(X.values(), G, yc);
      CHECK(check_certificate(s, X.values(), G, yc).ok);
      CHECK((s.beta - f.replicate_betas.row(k).transpose()).norm() < 1e-12);
      CHECK((s.gamma - f.replicate_gammas.row(k).transpose()).norm() < 1e-12);
    }
  }
  SUBCASE("unstandardized design uses the quantile rule") {
    const DesignMatrix X(gaussian_matrix(SeededRng(18), 8, 16) * 4.0);
    const VectorXd y = gaussian_vector(SeededRng(19), 8);
    LassoZeroConfig cfg = small_config(2);
    cfg.dictionary_scaling.mc_draws = 200;
    const LassoZeroFit f = fit(X, y, cfg, 0.0);
    const DictionaryFactory dict(X, cfg, SeededRng(cfg.seed));
    const MatrixXd G = dict.make(1);
    // Common column norm.
    for (Index j = 1; j < G.cols(); ++j)
      CHECK(G.col(j).norm() == doctest::Approx(G.col(0).norm()));
    const ExtendedBpSolution s = solve_extended_bp(X.values(), G, y);
    CHECK((s.beta - f.replicate_betas.row(1).transpose()).norm() < 1e-12);
  }
}

TEST_CASE("fit rejects bad input") {
  const DesignMatrix X = random_standardized(17, 8, 16);
  CHECK_THROWS_AS(fit(X, VectorXd::Zero(7), small_config(), 0.0), Error);
  CHECK_THROWS_AS(fit(X, VectorXd::Zero(8), small_config(), -1.0), Error);
}
