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

#ifndef LASS0_QUT_HPP
#define LASS0_QUT_HPP

#include <optional>
#include <string>
#include <vector>

#include "lass0/gev.hpp"
#include "lass0/lasso_zero.hpp"

namespace lass0 {

enum class QuantileEstimator { kAuto, kEmpirical, kGev };

struct CalibrationOptions {
  int R = 500;
  double alpha = 0.05;
  std::uint64_t seed = 12345;
  bool fit_gev = true;
  double mad_consistency = kMadConsistency;
  // Failed replications are dropped; more than this fraction aborts.
  double max_failure_fraction = 0.05;
  int threads = 1;
  // Extra levels reported in the alpha -> quantile table.
  std::vector<double> alpha_grid;
};

struct QuantileRow {
  double alpha = 0.0;
  double empirical = 0.0;
  std::optional<double> gev;
};

// Monte Carlo sample of the pivotal statistic (or of T when sigma is
// known) together with its quantile estimates.
struct PivotalCalibration {
  std::vector<double> samples;  // sorted ascending
  double alpha = 0.05;
  double q_alpha_empirical = 0.0;
  std::optional<GevParams> gev;
  std::optional<double> q_alpha_gev;
  std::uint64_t seed = 0;
  int R = 0;
  int failures = 0;
  double mad_consistency = kMadConsistency;
  std::optional<double> sigma;  // set for the known-sigma statistic T
  std::string design_hash;
  LassoZeroConfig config;
  std::vector<QuantileRow> table;
  std::vector<std::string> warnings;

  // Quantile estimator actually used for a requested choice: the
  // empirical quantile once R >= 20 / alpha, the GEV quantile below.
  double quantile(QuantileEstimator choice = QuantileEstimator::kAuto) const;
};

// Empirical quantiles are used at level alpha once R >= 20 / alpha.
bool empirical_quantile_sufficient(int R, double alpha);

// MAD over the pooled entries across replicates with
// |gamma| > zero_tol * max |gamma|.
double noise_scale_s(const MatrixXd& gammas, double zero_tol,
                     double consistency = kMadConsistency);

struct PivotalValue {
  double numerator = 0.0;  // ||beta_l1(e)||_inf
  double scale = 0.0;      // s(e)
  double value() const { return numerator / scale; }
};

// Runs the full Lasso-Zero pipeline on a single noise vector e with the
// dictionaries of stream rng.
PivotalValue pivotal_statistic(const DesignMatrix& X, const VectorXd& e,
                               const LassoZeroConfig& cfg, SeededRng rng,
                               double consistency = kMadConsistency);

// R replications of P under e ~ N(0, I). Only the sample, failure count
// and provenance are filled; see calibrate() for quantiles.
PivotalCalibration simulate_pivotal(const DesignMatrix& X,
                                    const LassoZeroConfig& cfg,
                                    const CalibrationOptions& opts);

// simulate_pivotal followed by the empirical quantile, the GEV fit (when
// requested) and the alpha table.
PivotalCalibration calibrate(const DesignMatrix& X, const LassoZeroConfig& cfg,
                             const CalibrationOptions& opts);

// R replications of T = ||beta_l1(e)||_inf with e ~ N(0, sigma^2 I); the
// quantile is the known-sigma threshold directly.
PivotalCalibration calibrate_known_sigma(const DesignMatrix& X,
                                         const LassoZeroConfig& cfg,
                                         double sigma,
                                         const CalibrationOptions& opts);

double known_sigma_threshold(const DesignMatrix& X, const LassoZeroConfig& cfg,
                             double sigma, double alpha, int R,
                             std::uint64_t seed,
                             std::vector<std::string>* warnings = nullptr);

// s(y) times the calibrated quantile. The data fit must come from the
// same design and config as the calibration.
double threshold_from_calibration(const PivotalCalibration& cal,
                                  const LassoZeroFit& fit_on_data,
                                  bool use_gev);
double threshold_from_calibration(const PivotalCalibration& cal,
                                  const LassoZeroFit& fit_on_data,
                                  QuantileEstimator choice =
                                      QuantileEstimator::kAuto);

// Fills the quantile fields of a calibration from its samples.
void summarize_calibration(PivotalCalibration& cal, bool fit_gev);

}  // namespace lass0

#endif  // LASS0_QUT_HPP
