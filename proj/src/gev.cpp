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

#include "lass0/gev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lass0 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double gev_cdf(const GevParams& g, double x) {
  const double z = (x - g.location) / g.scale;
  if (std::abs(g.shape) < kGumbelShapeTol) return std::exp(-std::exp(-z));
  const double t = 1.0 + g.shape * z;
  if (t <= 0.0) return g.shape > 0 ? 0.0 : 1.0;
  return std::exp(-std::pow(t, -1.0 / g.shape));
}

double gev_log_density(const GevParams& g, double x) {
  const double z = (x - g.location) / g.scale;
  if (std::abs(g.shape) < kGumbelShapeTol) {
    return -std::log(g.scale) - z - std::exp(-z);
  }
  const double t = 1.0 + g.shape * z;
  if (t <= 0.0) return -kInf;
  const double lt = std::log(t);
  return -std::log(g.scale) - (1.0 + 1.0 / g.shape) * lt -
         std::exp(-lt / g.shape);
}

double gev_log_likelihood(const GevParams& g,
                          const std::vector<double>& samples) {
  if (!(g.scale > 0.0)) return -kInf;
  double ll = 0.0;
  for (double x : samples) {
    const double v = gev_log_density(g, x);
    if (!std::isfinite(v)) return -kInf;
    ll += v;
  }
  return ll;
}

double gev_quantile(const GevParams& g, double u) {
  const double w = -std::log(u);
  if (std::abs(g.shape) < kGumbelShapeTol) {
    return g.location - g.scale * std::log(w);
  }
  return g.location + g.scale / g.shape * (std::pow(w, -g.shape) - 1.0);
}

double gev_upper_quantile(const GevParams& g, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  }
  return gev_quantile(g, 1.0 - alpha);
}

GevParams gev_pwm_estimate(const std::vector<double>& samples) {
  std::vector<double> x = samples;
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double b0 = 0, b1 = 0, b2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = static_cast<double>(i);
    b0 += x[i];
    b1 += r / (n - 1.0) * x[i];
    b2 += r * (r - 1.0) / ((n - 1.0) * (n - 2.0)) * x[i];
  }
  b0 /= n;
  b1 /= n;
  b2 /= n;
  // Hosking's k is the negated shape.
  const double c = (2.0 * b1 - b0) / (3.0 * b2 - b0) - std::log(2.0) / std::log(3.0);
  const double k = 7.8590 * c + 2.9554 * c * c;
  GevParams g;
  if (std::abs(k) < 1e-6) {
    g.scale = (2.0 * b1 - b0) / std::log(2.0);
    g.location = b0 - 0.5772156649015329 * g.scale;
    g.shape = 0.0;
  } else {
    const double gam = std::tgamma(1.0 + k);
    g.scale = (2.0 * b1 - b0) * k / (gam * (1.0 - std::pow(2.0, -k)));
    g.location = b0 + g.scale * (gam - 1.0) / k;
    g.shape = -k;
  }
  if (!(g.scale > 0.0) || !std::isfinite(g.scale)) {
    // Fall back to Gumbel moments.
    const double mean = b0;
    double var = 0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= n - 1.0;
    g.scale = std::sqrt(6.0 * var) / 3.14159265358979323846;
    g.location = mean - 0.5772156649015329 * g.scale;
    g.shape = 0.0;
  }
  return g;
}

NelderMeadResult nelder_mead(const std::function<double(const VectorXd&)>& f,
                             const VectorXd& start, const VectorXd& step,
                             int max_iterations, double ftol, double xtol) {
  const Index d = start.size();
  auto eval = [&](const VectorXd& x) {
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
  };
  std::vector<VectorXd> pts(d + 1, start);
  std::vector<double> vals(d + 1);
  for (Index i = 0; i < d; ++i) pts[i + 1](i) += step(i);
  for (Index i = 0; i <= d; ++i) vals[i] = eval(pts[i]);

  NelderMeadResult res;
  std::vector<Index> order(d + 1);
  for (int it = 0; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return vals[a] < vals[b]; });
    const Index best = order.front();
    const Index worst = order.back();
    const Index second = order[d - 1];
    res.iterations = it;

    double spread = 0.0;
    for (Index i = 0; i <= d; ++i)
      spread = std::max(spread, (pts[i] - pts[best]).lpNorm<Eigen::Infinity>());
    if (std::isfinite(vals[worst]) &&
        std::abs(vals[worst] - vals[best]) <= ftol * (1.0 + std::abs(vals[best])) &&
        spread <= xtol) {
      res.converged = true;
      break;
    }

    VectorXd centroid = VectorXd::Zero(d);
    for (Index i = 0; i <= d; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(d);

    const VectorXd xr = centroid + (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const VectorXd xc = outside ? VectorXd(centroid + 0.5 * (xr - centroid))
                                : VectorXd(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (Index i = 0; i <= d; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  res.argmin = pts[it - vals.begin()];
  res.value = *it;
  return res;
}

GevParams fit_gev(const std::vector<double>& samples) {
  if (samples.size() < 30) {
    throw Error(ErrorCode::kFitFailed,
                "GEV fit needs at least 30 samples, got " +
                    std::to_string(samples.size()));
  }
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (!(*hi > *lo)) {
    throw Error(ErrorCode::kFitFailed, "GEV fit on a constant sample");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kFitFailed, "GEV fit on non-finite samples");
    }
  }

  // Work on data standardized by the initializer so the optimizer path is
  // invariant to location shifts and scale changes of the sample.
  const GevParams init = gev_pwm_estimate(samples);
  const double mu0 = init.location;
  const double s0 = init.scale;
  std::vector<double> z(samples.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (samples[i] - mu0) / s0;

  auto negll = [&](const VectorXd& t) {
    GevParams g{t(0), std::exp(t(1)), t(2), 0.0};
    return -gev_log_likelihood(g, z);
  };

  VectorXd start(3);
  start << 0.0, 0.0, std::clamp(init.shape, -0.9, 0.9);
  if (!std::isfinite(negll(start))) {
    // Move the initial shape toward the Gumbel case until every sample
    // sits inside the support.
    for (double s = start(2) / 2.0;; s /= 2.0) {
      start(2) = s;
      if (std::isfinite(negll(start)) || std::abs(s) < 1e-8) break;
    }
    if (!std::isfinite(negll(start))) start(2) = 0.0;
  }
  const double start_value = negll(start);
  VectorXd step(3);
  step << 0.1, 0.1, 0.05;
  NelderMeadResult nm = nelder_mead(negll, start, step);
  // One restart from the optimum guards against a collapsed simplex.
  nm = nelder_mead(negll, nm.argmin, step * 0.1);
  if (!nm.converged || !std::isfinite(nm.value) || nm.value > start_value) {
    throw Error(ErrorCode::kFitFailed, "GEV likelihood optimization failed");
  }

  GevParams out;
  out.location = mu0 + s0 * nm.argmin(0);
  out.scale = s0 * std::exp(nm.argmin(1));
  out.shape = nm.argmin(2);
  out.log_likelihood = gev_log_likelihood(out, samples);
  if (!std::isfinite(out.log_likelihood)) {
    throw Error(ErrorCode::kFitFailed,
                "fitted GEV support excludes some samples");
  }
  return out;
}

double gev_qq_correlation(const GevParams& params,
                          const std::vector<double>& samples) {
  std::vector<double> x = samples;
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = gev_quantile(params, (static_cast<double>(i) + 0.5) / n);
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double mq = std::accumulate(q.begin(), q.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (q[i] - mq);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (q[i] - mq) * (q[i] - mq);
  }
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> gev_sample(const GevParams& params, std::size_t count,
                               SeededRng rng) {
  std::vector<double> out(count);
  for (auto& v : out) v = gev_quantile(params, rng.uniform());
  return out;
}

}  // namespace lass0
