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

#ifndef LASS0_CORE_HPP
#define LASS0_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lass0/error.hpp"

namespace lass0 {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;
using MatrixXd = Eigen::MatrixXd;
using VectorXd = Eigen::VectorXd;

// Sorted, 0-based column indices.
using SupportSet = std::vector<Index>;

template <typename Scalar>
struct ColumnScaling {
  Scalar mean = 0;
  Scalar scale = 1;
};

// n x p regressor matrix plus the per-column affine map that produced it
// from the raw data. Immutable once built.
// kColumns marks columns already centered, so fits center the response too.
enum class Centering { kNone, kColumns };

template <typename Scalar>
class BasicDesignMatrix {
 public:
  BasicDesignMatrix() = default;

  explicit BasicDesignMatrix(Matrix<Scalar> values)
      : values_(std::move(values)) {
    if (values_.rows() < 1 || values_.cols() < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "design matrix needs at least one row and one column");
    }
    if (!values_.allFinite()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "design matrix has non-finite entries");
    }
  }

  BasicDesignMatrix(Matrix<Scalar> values, Centering centering)
      : BasicDesignMatrix(std::move(values)) {
    centering_ = centering;
  }

  BasicDesignMatrix(Matrix<Scalar> values,
                    std::vector<ColumnScaling<Scalar>> scaling)
      : BasicDesignMatrix(std::move(values)) {
    if (static_cast<Index>(scaling.size()) != values_.cols()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "column scaling must have one entry per column");
    }
    scaling_ = std::move(scaling);
    standardized_ = true;
    centering_ = Centering::kColumns;
  }

  const Matrix<Scalar>& values() const { return values_; }
  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }
  bool standardized() const { return standardized_; }
  bool centered() const { return centering_ == Centering::kColumns; }
  const std::vector<ColumnScaling<Scalar>>& column_scaling() const {
    return scaling_;
  }

  // Maps a coefficient vector fitted on the standardized columns back to
  // the original column units. Identity when not standardized.
  Vector<Scalar> coefficients_to_original(const Vector<Scalar>& beta) const {
    if (!standardized_) return beta;
    Vector<Scalar> out(beta.size());
    for (Index j = 0; j < beta.size(); ++j) out(j) = beta(j) / scaling_[j].scale;
    return out;
  }

  // Reverses the standardization of the stored values.
  Matrix<Scalar> original_values() const {
    if (!standardized_) return values_;
    Matrix<Scalar> out = values_;
    for (Index j = 0; j < out.cols(); ++j) {
      out.col(j) = out.col(j).array() * scaling_[j].scale + scaling_[j].mean;
    }
    return out;
  }

 private:
  Matrix<Scalar> values_;
  std::vector<ColumnScaling<Scalar>> scaling_;
  bool standardized_ = false;
  Centering centering_ = Centering::kNone;
};

using DesignMatrix = BasicDesignMatrix<double>;
using ResponseVector = VectorXd;

struct GroundTruth {
  VectorXd beta0;
  SupportSet support;
  double sigma = 1.0;

  GroundTruth() = default;
  GroundTruth(VectorXd beta, double noise_sigma)
      : beta0(std::move(beta)), sigma(noise_sigma) {
    if (!(sigma > 0)) {
      throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
    }
    for (Index j = 0; j < beta0.size(); ++j) {
      if (beta0(j) != 0.0) support.push_back(j);
    }
  }
};

template <typename Derived>
SupportSet support_of(const Eigen::MatrixBase<Derived>& v) {
  SupportSet s;
  for (Index j = 0; j < v.size(); ++j) {
    if (v(j) != typename Derived::Scalar(0)) s.push_back(j);
  }
  return s;
}

// Sample standard deviation with divisor n - 1.
template <typename Derived>
typename Derived::Scalar sample_sd(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Index n = v.size();
  if (n < 2) return Scalar(0);
  const Scalar mean = v.mean();
  return std::sqrt((v.array() - mean).square().sum() / Scalar(n - 1));
}

// Centers every column and divides by its sample standard deviation.
// Re-standardizing composes the column maps so original_values() still
// recovers the raw data.
template <typename Scalar>
BasicDesignMatrix<Scalar> standardize(const BasicDesignMatrix<Scalar>& X) {
  const Index n = X.rows();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "standardize needs n >= 2");
  }
  Matrix<Scalar> out = X.values();
  std::vector<ColumnScaling<Scalar>> scaling(X.cols());
  for (Index j = 0; j < X.cols(); ++j) {
    const Scalar mean = out.col(j).mean();
    const Scalar sd = sample_sd(out.col(j));
    if (!(sd > Scalar(1e-12))) {
      throw Error(ErrorCode::kConstantColumn,
                  "column " + std::to_string(j) + " has zero variance");
    }
    out.col(j) = (out.col(j).array() - mean) / sd;
    if (X.standardized()) {
      const auto& prev = X.column_scaling()[j];
      scaling[j] = {prev.mean + prev.scale * mean, prev.scale * sd};
    } else {
      scaling[j] = {mean, sd};
    }
  }
  return BasicDesignMatrix<Scalar>(std::move(out), std::move(scaling));
}

// (I - P_1) applied to the columns of X and to y. The result is marked
// centered and carries no standardization metadata.
template <typename Scalar>
std::pair<BasicDesignMatrix<Scalar>, Vector<Scalar>> mean_center_projection(
    const BasicDesignMatrix<Scalar>& X, const Vector<Scalar>& y) {
  if (X.rows() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "response length does not match design rows");
  }
  if (X.rows() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "mean_center_projection needs n >= 2");
  }
  Matrix<Scalar> Xc = X.values().rowwise() - X.values().colwise().mean();
  Vector<Scalar> yc = y.array() - y.mean();
  return {BasicDesignMatrix<Scalar>(std::move(Xc), Centering::kColumns),
          std::move(yc)};
}

inline std::pair<DesignMatrix, VectorXd> mean_center_projection(
    const DesignMatrix& X, const VectorXd& y) {
  return mean_center_projection<double>(X, y);
}

// Reproducible generator addressed by (seed, stream). Streams derived with
// child() are statistically independent and do not depend on the order in
// which they are created, so parallel schedules reproduce serial output.
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), engine_(mix(seed, stream)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  SeededRng child(std::uint64_t id) const {
    return SeededRng(seed_, splitmix64(stream_ * 0x9E3779B97F4A7C15ULL +
                                       splitmix64(id + 1)));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on (0, 1), 53 bits.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Box-Muller; the cached second variate keeps the sequence exact across
  // platforms (std::normal_distribution is implementation-defined).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL));
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// n x q matrix of iid N(0, 1) draws, filled column by column.
inline MatrixXd gaussian_matrix(SeededRng rng, Index n, Index q) {
  if (n < 1 || q < 0) {
    throw Error(ErrorCode::kInvalidArgument, "gaussian_matrix: bad shape");
  }
  MatrixXd G(n, q);
  for (Index j = 0; j < q; ++j)
    for (Index i = 0; i < n; ++i) G(i, j) = rng.normal();
  return G;
}

inline VectorXd gaussian_vector(SeededRng rng, Index n, double sigma = 1.0) {
  VectorXd v(n);
  for (Index i = 0; i < n; ++i) v(i) = sigma * rng.normal();
  return v;
}

// k distinct indices drawn uniformly from [0, p), sorted.
inline SupportSet sample_without_replacement(SeededRng& rng, Index p,
                                             Index k) {
  if (k < 0 || k > p) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot draw " + std::to_string(k) + " of " +
                    std::to_string(p) + " indices");
  }
  std::vector<Index> pool(static_cast<std::size_t>(p));
  for (Index i = 0; i < p; ++i) pool[i] = i;
  for (Index i = 0; i < k; ++i) {
    const Index j = i + static_cast<Index>(rng.below(p - i));
    std::swap(pool[i], pool[j]);
  }
  SupportSet out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

// Plain numeric CSV, rows = observations. Set skip_header to drop the
// first line.
MatrixXd read_csv_matrix(const std::string& path, bool skip_header = false);
VectorXd read_csv_vector(const std::string& path, bool skip_header = false);
void write_csv_matrix(const std::string& path, const MatrixXd& m);

// FNV-1a digest of the shape and raw entries, as 16 hex digits.
std::string design_hash(const MatrixXd& X);

// Numerical rank with a relative singular-value cutoff.
Index numerical_rank(const MatrixXd& A, double rel_cutoff = 1e-10);

// Orthonormal basis of ker(A), cutoff relative to the largest singular value.
MatrixXd kernel_basis(const MatrixXd& A, double rel_cutoff = 1e-10);

}  // namespace lass0

#endif  // LASS0_CORE_HPP
