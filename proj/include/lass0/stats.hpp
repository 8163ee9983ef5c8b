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

#ifndef LASS0_STATS_HPP
#define LASS0_STATS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "lass0/core.hpp"

namespace lass0 {

// Gaussian consistency factor for the median absolute deviation.
inline constexpr double kMadConsistency = 1.4826;

// Sample median; even sizes use the midpoint of the two central order
// statistics.
template <typename Scalar>
Scalar median(std::vector<Scalar> v) {
  if (v.empty()) throw Error(ErrorCode::kInvalidArgument, "median of nothing");
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const Scalar upper = v[mid];
  if (n % 2 == 1) return upper;
  const Scalar lower = *std::max_element(v.begin(), v.begin() + mid);
  return (lower + upper) / Scalar(2);
}

template <typename Derived>
typename Derived::Scalar median(const Eigen::DenseBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  std::vector<Scalar> buf(v.size());
  Index k = 0;
  for (Index j = 0; j < v.cols(); ++j)
    for (Index i = 0; i < v.rows(); ++i) buf[k++] = v(i, j);
  return median(std::move(buf));
}

// median(|v - median(v)|) * consistency.
template <typename Scalar>
Scalar mad(const std::vector<Scalar>& v,
           Scalar consistency = Scalar(kMadConsistency)) {
  const Scalar center = median(v);
  std::vector<Scalar> dev(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) dev[i] = std::abs(v[i] - center);
  return consistency * median(std::move(dev));
}

// The ceil((1 - alpha) R)-th order statistic (1-based) of the sample.
template <typename Scalar>
Scalar upper_quantile(std::vector<Scalar> v, double alpha) {
  if (v.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "quantile of an empty sample");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  }
  const auto r = static_cast<std::size_t>(
      std::ceil((1.0 - alpha) * static_cast<double>(v.size()) - 1e-9));
  const std::size_t k = std::clamp<std::size_t>(r, 1, v.size()) - 1;
  std::nth_element(v.begin(), v.begin() + k, v.end());
  return v[k];
}

// True when the order statistic used by upper_quantile is the sample
// maximum, i.e. alpha * R < 1 and the tail is not resolved.
inline bool quantile_beyond_resolution(std::size_t samples, double alpha) {
  return alpha * static_cast<double>(samples) < 1.0;
}

// Empirical quantile at probability u with linear interpolation between
// order statistics (type 7). Input must be sorted.
inline double interpolated_quantile(const std::vector<double>& sorted,
                                    double u) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * u;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace lass0

#endif  // LASS0_STATS_HPP
