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

#include "lass0/qut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lass0/parallel.hpp"

namespace lass0 {

namespace {

// Per-replication streams: noise draw and dictionaries.
constexpr std::uint64_t kNoiseStream = 0;
constexpr std::uint64_t kDictionaryStream = 1;

void validate(const CalibrationOptions& opts) {
  if (opts.R < 1) throw Error(ErrorCode::kInvalidArgument, "R must be >= 1");
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  }
  for (double a : opts.alpha_grid) {
    if (!(a > 0.0 && a < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "alpha grid must lie in (0, 1)");
    }
  }
}

template <typename Statistic>
PivotalCalibration run_replications(const DesignMatrix& X,
                                    const LassoZeroConfig& cfg,
                                    const CalibrationOptions& opts,
                                    Statistic&& statistic) {
  validate(opts);
  LassoZeroConfig inner = cfg;
  inner.threads = 1;
  const auto R = static_cast<std::size_t>(opts.R);
  std::vector<double> values(R, std::numeric_limits<double>::quiet_NaN());
  const SeededRng root(opts.seed);
  parallel_for(R, opts.threads, [&](std::size_t r) {
    const SeededRng rep = root.child(r);
    try {
      values[r] = statistic(inner, rep.child(kNoiseStream),
                            rep.child(kDictionaryStream));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvalidArgument ||
          e.code() == ErrorCode::kDimensionMismatch) {
        throw;
      }
    }
  });

  PivotalCalibration cal;
  cal.alpha = opts.alpha;
  cal.seed = opts.seed;
  cal.R = opts.R;
  cal.mad_consistency = opts.mad_consistency;
  cal.design_hash = design_hash(X.values());
  cal.config = cfg;
  for (double v : values) {
    if (std::isfinite(v)) {
      cal.samples.push_back(v);
    } else {
      ++cal.failures;
    }
  }
  if (cal.failures > opts.max_failure_fraction * opts.R) {
    throw Error(ErrorCode::kTooManyFailures,
                std::to_string(cal.failures) + " of " + std::to_string(opts.R) +
                    " calibration replications failed");
  }
  if (cal.failures > 0) {
    cal.warnings.push_back(std::to_string(cal.failures) +
                           " replications failed and were dropped");
  }
  if (cal.samples.empty()) {
    throw Error(ErrorCode::kTooManyFailures, "no calibration replication succeeded");
  }
  std::sort(cal.samples.begin(), cal.samples.end());
  return cal;
}

}  // namespace

bool empirical_quantile_sufficient(int R, double alpha) {
  return static_cast<double>(R) >= 20.0 / alpha - 1e-9;
}

double PivotalCalibration::quantile(QuantileEstimator choice) const {
  switch (choice) {
    case QuantileEstimator::kEmpirical:
      return q_alpha_empirical;
    case QuantileEstimator::kGev:
      if (!q_alpha_gev) {
        throw Error(ErrorCode::kFitFailed, "calibration carries no GEV fit");
      }
      return *q_alpha_gev;
    case QuantileEstimator::kAuto:
      if (q_alpha_gev &&
          !empirical_quantile_sufficient(static_cast<int>(samples.size()), alpha)) {
        return *q_alpha_gev;
      }
      return q_alpha_empirical;
  }
  return q_alpha_empirical;
}

double noise_scale_s(const MatrixXd& gammas, double zero_tol,
                     double consistency) {
  const double cut =
      gammas.size() == 0 ? 0.0 : zero_tol * gammas.cwiseAbs().maxCoeff();
  std::vector<double> pooled;
  for (Index j = 0; j < gammas.cols(); ++j)
    for (Index k = 0; k < gammas.rows(); ++k)
      if (std::abs(gammas(k, j)) > cut) pooled.push_back(gammas(k, j));
  if (pooled.size() < 2) {
    throw Error(ErrorCode::kDegenerateNoiseFit,
                "fewer than two nonzero noise coefficients (is q = 0?)");
  }
  const double s = mad(pooled, consistency);
  if (!(s > 0.0)) {
    throw Error(ErrorCode::kDegenerateNoiseFit,
                "nonzero noise coefficients have zero spread");
  }
  return s;
}

PivotalValue pivotal_statistic(const DesignMatrix& X, const VectorXd& e,
                               const LassoZeroConfig& cfg, SeededRng rng,
                               double consistency) {
  if (cfg.width(X.rows()) < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "the pivotal statistic needs a noise dictionary (q >= 1)");
  }
  const LassoZeroFit f = fit(X, e, cfg, 0.0, rng);
  PivotalValue v;
  v.numerator = f.beta_l1.lpNorm<Eigen::Infinity>();
  v.scale = noise_scale_s(f.replicate_gammas, cfg.tol.zero_tol, consistency);
  return v;
}

void summarize_calibration(PivotalCalibration& cal, bool fit_gev_now) {
  std::sort(cal.samples.begin(), cal.samples.end());
  cal.q_alpha_empirical = upper_quantile(cal.samples, cal.alpha);
  if (quantile_beyond_resolution(cal.samples.size(), cal.alpha)) {
    std::ostringstream msg;
    msg << "alpha = " << cal.alpha << " with " << cal.samples.size()
        << " samples: the empirical quantile is the sample maximum";
    cal.warnings.push_back(msg.str());
  }
  cal.gev.reset();
  cal.q_alpha_gev.reset();
  if (fit_gev_now) {
    try {
      cal.gev = fit_gev(cal.samples);
      cal.q_alpha_gev = gev_upper_quantile(*cal.gev, cal.alpha);
    } catch (const Error& e) {
      cal.warnings.push_back(std::string("GEV fit skipped: ") + e.detail());
    }
  }
  std::vector<double> levels;
  for (const auto& row : cal.table) levels.push_back(row.alpha);
  if (std::find(levels.begin(), levels.end(), cal.alpha) == levels.end()) {
    levels.push_back(cal.alpha);
  }
  std::sort(levels.begin(), levels.end());
  cal.table.clear();
  for (double a : levels) {
    QuantileRow row;
    row.alpha = a;
    row.empirical = upper_quantile(cal.samples, a);
    if (cal.gev) row.gev = gev_upper_quantile(*cal.gev, a);
    cal.table.push_back(row);
  }
}

PivotalCalibration simulate_pivotal(const DesignMatrix& X,
                                    const LassoZeroConfig& cfg,
                                    const CalibrationOptions& opts) {
  cfg.validate();
  if (cfg.width(X.rows()) < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "pivotal calibration needs q >= 1; use the known-sigma path");
  }
  const Index n = X.rows();
  return run_replications(
      X, cfg, opts,
      [&](const LassoZeroConfig& inner, SeededRng noise, SeededRng dict) {
        const VectorXd e = gaussian_vector(noise, n);
        return pivotal_statistic(X, e, inner, dict, opts.mad_consistency)
            .value();
      });
}

namespace {

void seed_table(PivotalCalibration& cal, const CalibrationOptions& opts) {
  for (double a : opts.alpha_grid) cal.table.push_back(QuantileRow{a, 0.0, {}});
}

}  // namespace

PivotalCalibration calibrate(const DesignMatrix& X, const LassoZeroConfig& cfg,
                             const CalibrationOptions& opts) {
  PivotalCalibration cal = simulate_pivotal(X, cfg, opts);
  seed_table(cal, opts);
  summarize_calibration(cal, opts.fit_gev);
  return cal;
}

PivotalCalibration calibrate_known_sigma(const DesignMatrix& X,
                                         const LassoZeroConfig& cfg,
                                         double sigma,
                                         const CalibrationOptions& opts) {
  cfg.validate();
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  }
  const Index n = X.rows();
  PivotalCalibration cal = run_replications(
      X, cfg, opts,
      [&](const LassoZeroConfig& inner, SeededRng noise, SeededRng dict) {
        const VectorXd e = gaussian_vector(noise, n, sigma);
        return fit(X, e, inner, 0.0, dict).beta_l1.lpNorm<Eigen::Infinity>();
      });
  cal.sigma = sigma;
  seed_table(cal, opts);
  summarize_calibration(cal, opts.fit_gev);
  return cal;
}

double known_sigma_threshold(const DesignMatrix& X, const LassoZeroConfig& cfg,
                             double sigma, double alpha, int R,
                             std::uint64_t seed,
                             std::vector<std::string>* warnings) {
  CalibrationOptions opts;
  opts.alpha = alpha;
  opts.R = R;
  opts.seed = seed;
  opts.fit_gev = false;
  opts.threads = cfg.threads;
  const PivotalCalibration cal = calibrate_known_sigma(X, cfg, sigma, opts);
  if (warnings) *warnings = cal.warnings;
  return cal.q_alpha_empirical;
}

double threshold_from_calibration(const PivotalCalibration& cal,
                                  const LassoZeroFit& fit_on_data,
                                  bool use_gev) {
  return threshold_from_calibration(
      cal, fit_on_data,
      use_gev ? QuantileEstimator::kGev : QuantileEstimator::kEmpirical);
}

double threshold_from_calibration(const PivotalCalibration& cal,
                                  const LassoZeroFit& fit_on_data,
                                  QuantileEstimator choice) {
  const double q = cal.quantile(choice);
  if (cal.sigma) return q;
  const double s = noise_scale_s(fit_on_data.replicate_gammas,
                                 cal.config.tol.zero_tol, cal.mad_consistency);
  return s * q;
}

}  // namespace lass0
