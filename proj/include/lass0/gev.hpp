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

#ifndef LASS0_GEV_HPP
#define LASS0_GEV_HPP

#include <functional>
#include <vector>

#include "lass0/core.hpp"

namespace lass0 {

// Generalized extreme value law with cdf
//   F(x) = exp(-(1 + shape (x - location) / scale)^(-1 / shape)),
// read as the Gumbel cdf exp(-exp(-(x - location) / scale)) at shape 0.
struct GevParams {
  double location = 0.0;
  double scale = 1.0;
  double shape = 0.0;
  double log_likelihood = 0.0;
};

// Below this |shape| the Gumbel limit formulas are used.
inline constexpr double kGumbelShapeTol = 1e-10;

double gev_cdf(const GevParams& params, double x);
double gev_log_density(const GevParams& params, double x);
double gev_log_likelihood(const GevParams& params,
                          const std::vector<double>& samples);

// F^{-1}(u).
double gev_quantile(const GevParams& params, double u);
// F^{-1}(1 - alpha).
double gev_upper_quantile(const GevParams& params, double alpha);

// Probability-weighted-moment estimates (Hosking, Wallis and Wood).
GevParams gev_pwm_estimate(const std::vector<double>& samples);

// Maximum likelihood by Nelder-Mead from the PWM estimate. Requires at
// least 30 samples that are not all equal.
GevParams fit_gev(const std::vector<double>& samples);

// Pearson correlation between the sorted sample and the fitted quantiles
// at plotting positions (i - 0.5) / R.
double gev_qq_correlation(const GevParams& params,
                          const std::vector<double>& samples);

// Deterministic GEV draws by inversion.
std::vector<double> gev_sample(const GevParams& params, std::size_t count,
                               SeededRng rng);

struct NelderMeadResult {
  VectorXd argmin;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Derivative-free simplex minimizer; non-finite objective values are
// treated as +infinity.
NelderMeadResult nelder_mead(const std::function<double(const VectorXd&)>& f,
                             const VectorXd& start, const VectorXd& step,
                             int max_iterations = 5000, double ftol = 1e-12,
                             double xtol = 1e-10);

}  // namespace lass0

#endif  // LASS0_GEV_HPP
