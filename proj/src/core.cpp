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

#include "lass0/core.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lass0 {

namespace {

std::vector<std::vector<double>> read_rows(const std::string& path,
                                           bool skip_header) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_header && line_no == 1) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 ||
          cell.find_first_not_of(" \t", used) != std::string::npos) {
        throw Error(ErrorCode::kParseError,
                    path + ":" + std::to_string(line_no) +
                        ": not a number: '" + cell + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::kParseError,
                  path + ":" + std::to_string(line_no) +
                      ": ragged row (expected " +
                      std::to_string(rows.front().size()) + " fields)");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw Error(ErrorCode::kParseError, "'" + path + "' has no data rows");
  }
  return rows;
}

}  // namespace

MatrixXd read_csv_matrix(const std::string& path, bool skip_header) {
  const auto rows = read_rows(path, skip_header);
  MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

VectorXd read_csv_vector(const std::string& path, bool skip_header) {
  MatrixXd m = read_csv_matrix(path, skip_header);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw Error(ErrorCode::kParseError,
              "'" + path + "' is not a single row or column");
}

void write_csv_matrix(const std::string& path, const MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write '" + path + "'");
  out.precision(17);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

std::string design_hash(const MatrixXd& X) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t dims[2] = {X.rows(), X.cols()};
  feed(dims, sizeof(dims));
  for (Index j = 0; j < X.cols(); ++j)
    for (Index i = 0; i < X.rows(); ++i) {
      const double v = X(i, j);
      feed(&v, sizeof(v));
    }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Index numerical_rank(const MatrixXd& A, double rel_cutoff) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_cutoff * s(0)) ++r;
  return r;
}

MatrixXd kernel_basis(const MatrixXd& A, double rel_cutoff) {
  const Index p = A.cols();
  Eigen::JacobiSVD<MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Index r = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    for (Index i = 0; i < s.size(); ++i)
      if (s(i) > rel_cutoff * s(0)) ++r;
  }
  return svd.matrixV().rightCols(p - r);
}

}  // namespace lass0
