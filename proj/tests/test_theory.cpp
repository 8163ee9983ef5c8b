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

#include <cmath>

#include "doctest.h"
#include "lass0/bp.hpp"
#include "lass0/theory.hpp"

using namespace lass0;

namespace {

// Independent SNSP reference: the ratio is maximized at a vertex of
// {z : |N_Sc z|_1 <= 1}, i.e. a direction annihilated by d - 1 rows of N_Sc.
double snsp_by_vertices(const MatrixXd& X, const SupportSet& S) {
  const MatrixXd N = kernel_basis(X);
  const Index d = N.cols();
  if (d == 0 || S.empty()) return 0.0;
  SupportSet Sc;
  for (Index j = 0; j < X.cols(); ++j)
    if (std::find(S.begin(), S.end(), j) == S.end()) Sc.push_back(j);
  const Index m = static_cast<Index>(Sc.size());
  double best = 0.0;
  std::vector<Index> pick(d - 1);
  for (Index i = 0; i < d - 1; ++i) pick[i] = i;
  for (;;) {
    MatrixXd rows(d - 1, d);
    for (Index i = 0; i < d - 1; ++i) rows.row(i) = N.row(Sc[pick[i]]);
    const MatrixXd K = d == 1 ? MatrixXd::Identity(1, 1) : kernel_basis(rows);
    if (K.cols() == 1) {
      const VectorXd b = N * K.col(0);
      double on = 0.0, off = 0.0;
      for (Index j : S) on += std::abs(b(j));
      for (Index j : Sc) off += std::abs(b(j));
      if (off > 1e-12) best = std::max(best, on / off);
    }
    if (d == 1) break;
    Index i = d - 2;
    while (i >= 0 && pick[i] == m - (d - 1) + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (Index k = i + 1; k < d - 1; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

double uniform_ir_by_enumeration(const MatrixXd& X, const SupportSet& S) {
  SupportSet Sc;
  for (Index j = 0; j < X.cols(); ++j)
    if (std::find(S.begin(), S.end(), j) == S.end()) Sc.push_back(j);
  MatrixXd XS(X.rows(), S.size()), XSc(X.rows(), Sc.size());
  for (std::size_t k = 0; k < S.size(); ++k) XS.col(k) = X.col(S[k]);
  for (std::size_t k = 0; k < Sc.size(); ++k) XSc.col(k) = X.col(Sc[k]);
  const MatrixXd W =
      XSc.transpose() * XS * (XS.transpose() * XS).inverse();
  double best = 0.0;
  const Index s = static_cast<Index>(S.size());
  for (int mask = 0; mask < (1 << s); ++mask) {
    VectorXd t(s);
    for (Index k = 0; k < s; ++k) t(k) = (mask >> k) & 1 ? -1.0 : 1.0;
    best = std::max(best, (W * t).lpNorm<Eigen::Infinity>());
  }
  return best;
}

}  // namespace

TEST_CASE("snsp_constant examples") {
  MatrixXd a(1, 2);
  a << 1, 1;
  CHECK(snsp_constant(a, {0}).rho_star == doctest::Approx(1.0));
  MatrixXd b(1, 2);
  b << 1, 2;
  CHECK(snsp_constant(b, {1}).rho_star == doctest::Approx(0.5));
  CHECK(snsp_constant(b, {0}).rho_star == doctest::Approx(2.0));

  const SnspReport full = snsp_constant(MatrixXd::Identity(3, 3), {0, 2});
  CHECK(full.rho_star == 0.0);
  CHECK(full.kernel_dim == 0);

  MatrixXd c(2, 3);
  c << 1, 0, 0, 0, 1, 0;
  const SnspReport inf = snsp_constant(c, {2});
  CHECK(!inf.finite());
  CHECK((c * inf.witness).lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK(std::abs(inf.witness(2)) > 0.5);
}

TEST_CASE("snsp_constant matches vertex enumeration") {
  SeededRng rng(11);
  for (int t = 0; t < 30; ++t) {
    const Index n = 3 + t % 4;
    const Index p = n + 2 + t % 3;
    const MatrixXd X = gaussian_matrix(rng.child(2 * t), n, p);
    SeededRng pick = rng.child(2 * t + 1);
    const SupportSet S = sample_without_replacement(pick, p, 1 + t % 3);
    const SnspReport r = snsp_constant(X, S);
    const double oracle = snsp_by_vertices(X, S);
    CHECK(r.rho_star == doctest::Approx(oracle).epsilon(1e-7));
    CHECK(r.certified);
    CHECK(r.upper_bound >= r.rho_star - 1e-9);
    CHECK((X * r.witness).lpNorm<Eigen::Infinity>() <= 1e-8);
    double on = 0.0, off = 0.0;
    for (Index j = 0; j < p; ++j) {
      if (std::find(S.begin(), S.end(), j) != S.end()) {
        on += std::abs(r.witness(j));
      } else {
        off += std::abs(r.witness(j));
      }
    }
    CHECK(std::abs(on - r.rho_star * off) <= 1e-6);
  }
}

TEST_CASE("snsp_constant enumeration limits") {
  const MatrixXd wide = gaussian_matrix(SeededRng(3), 1, 14);
  CHECK_THROWS_AS(snsp_constant(wide, {0}), Error);
  const MatrixXd X = gaussian_matrix(SeededRng(4), 8, 12);
  try {
    snsp_constant(X, {0, 1, 2, 3, 4, 5, 6, 7, 8});
    FAIL("expected EnumerationTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEnumerationTooLarge);
  }
  CHECK_THROWS_AS(snsp_constant(X, {12}), Error);
  CHECK_THROWS_AS(snsp_constant(X, {1, 1}), Error);
}

TEST_CASE("uniform_ir_constant") {
  CHECK(uniform_ir_constant(MatrixXd::Identity(4, 4), {1, 2}) == 0.0);
  const MatrixXd X = gaussian_matrix(SeededRng(5), 6, 3);
  CHECK(uniform_ir_constant(X, {0, 1, 2}) == 0.0);
  for (double phi : {0.3, 1.0, 2.5}) {
    MatrixXd A(2, 2);
    A << 1, std::cos(phi), 0, std::sin(phi);
    CHECK(uniform_ir_constant(A, {0}) ==
          doctest::Approx(std::abs(std::cos(phi))).epsilon(1e-12));
  }
  SeededRng rng(6);
  for (int t = 0; t < 20; ++t) {
    const MatrixXd G = gaussian_matrix(rng.child(2 * t), 10, 15);
    SeededRng pick = rng.child(2 * t + 1);
    const SupportSet S = sample_without_replacement(pick, 15, 1 + t % 4);
    CHECK(uniform_ir_constant(G, S) ==
          doctest::Approx(uniform_ir_by_enumeration(G, S)).epsilon(1e-10));
  }
  MatrixXd dup(3, 3);
  dup << 1, 1, 0, 2, 2, 1, 0, 0, 1;
  try {
    uniform_ir_constant(dup, {0, 1});
    FAIL("expected SingularGram");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSingularGram);
  }
}

TEST_CASE("verify_theorem1 noiseless case") {
  SeededRng rng(7);
  int checked = 0;
  for (int t = 0; t < 40 && checked < 10; ++t) {
    const MatrixXd X = gaussian_matrix(rng.child(t), 8, 16);
    const SupportSet S = {static_cast<Index>(t % 16), static_cast<Index>((t + 5) % 16)};
    const SnspReport rep = snsp_constant(X, S);
    if (!rep.finite() || rep.rho_star >= 1.0) continue;
    VectorXd beta0 = VectorXd::Zero(16);
    beta0(S[0]) = 1.5;
    beta0(S[1]) = -0.7;
    const Theorem1Record r = verify_theorem1(X, beta0, VectorXd::Zero(8));
    CHECK(r.noise_l1 == 0.0);
    CHECK(r.premise_held);
    CHECK(r.constructive_tau_worked);
    CHECK(r.sweep_worked);
    CHECK((r.beta_l1 - beta0).lpNorm<Eigen::Infinity>() <= 1e-7);
    ++checked;
  }
  CHECK(checked == 10);
}

TEST_CASE("verify_theorem1 preconditions") {
  MatrixXd X(2, 3);
  X << 1, 0, 1, 0, 1, 1;
  VectorXd beta0 = VectorXd::Zero(3);
  beta0(0) = 1.0;
  CHECK_THROWS_AS(verify_theorem1(X, beta0, VectorXd::Zero(3), 0.5), Error);
  MatrixXd low(2, 3);
  low << 1, 1, 1, 2, 2, 2;
  CHECK_THROWS_AS(verify_theorem1(low, beta0, VectorXd::Zero(2), 0.5), Error);
  CHECK_THROWS_AS(c_rho(1.0), Error);
  CHECK(c_rho(0.0) == 6.0);
  CHECK(c_rho(0.5) == doctest::Approx(14.0));
}

TEST_CASE("sign recovery campaign") {
  Theorem1CampaignOptions opts;
  opts.instances = 25;
  opts.threads = 2;
  const Theorem1Campaign c = run_theorem1_campaign(opts);
  REQUIRE(c.records.size() == 25);
  CHECK(c.counterexamples == 0);
  for (const Theorem1Record& r : c.records) {
    CHECK(r.premise_held);
    CHECK(r.constructive_tau_worked);
    CHECK(r.rho_star < 1.0);
  }
  opts.threads = 1;
  const Theorem1Campaign serial = run_theorem1_campaign(opts);
  CHECK(to_json(serial).dump() == to_json(c).dump());
}

TEST_CASE("verify_prop2") {
  const Prop2Record ortho = verify_prop2(MatrixXd::Identity(5, 5), {0, 3});
  CHECK(ortho.theta == 0.0);
  CHECK(ortho.rho_star == 0.0);
  CHECK(ortho.holds);

  MatrixXd X(2, 3);
  X << 1, 0, 1, 0, 1, 1;
  const Prop2Record vac = verify_prop2(X, {0, 1});
  CHECK(vac.vacuous);
  CHECK(vac.holds);

  Prop2CampaignOptions opts;
  opts.instances = 20;
  const Prop2Campaign c = run_prop2_campaign(opts);
  REQUIRE(c.records.size() == 20);
  CHECK(c.violations == 0);
  for (const Prop2Record& r : c.records) {
    CHECK(r.theta < 1.0);
    CHECK(r.rho_star <= r.theta + 1e-6);
  }
}

TEST_CASE("l0_oracle") {
  const MatrixXd X = gaussian_matrix(SeededRng(8), 5, 8);
  const VectorXd y = 2.5 * X.col(3);
  const L0Solution s = l0_oracle(X, y, 3);
  REQUIRE(s.support == SupportSet{3});
  CHECK(s.beta(3) == doctest::Approx(2.5));

  CHECK(l0_oracle(X, VectorXd::Zero(5), 3).support.empty());

  MatrixXd Z = X;
  Z.col(6) = X.col(1) + X.col(2);
  const L0Solution comb = l0_oracle(Z, VectorXd(Z.col(1) + Z.col(2)), 3);
  CHECK(comb.support == SupportSet{6});

  const VectorXd dense = X * VectorXd::LinSpaced(8, 1, 8);
  try {
    l0_oracle(X, dense, 2);
    FAIL("expected NotFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotFound);
  }
  CHECK_THROWS_AS(l0_oracle(gaussian_matrix(SeededRng(9), 3, 21),
                            VectorXd::Zero(3), 2),
                  Error);
  CHECK_THROWS_AS(l0_oracle(X, y, 7), Error);
}

TEST_CASE("basis pursuit agrees with the l0 oracle on sparse planted vectors") {
  SeededRng rng(10);
  int checked = 0;
  for (int t = 0; t < 60 && checked < 15; ++t) {
    const MatrixXd X = gaussian_matrix(rng.child(2 * t), 6, 12);
    SeededRng pick = rng.child(2 * t + 1);
    const SupportSet S = sample_without_replacement(pick, 12, 2);
    if (snsp_constant(X, S).rho_star >= 1.0) continue;
    VectorXd beta0 = VectorXd::Zero(12);
    beta0(S[0]) = 1.0 + pick.uniform();
    beta0(S[1]) = -1.0 - pick.uniform();
    const VectorXd y = X * beta0;
    const L0Solution l0 = l0_oracle(X, y, 3);
    const BpSolution bp = solve_bp(X, y);
    CHECK(l0.support == S);
    for (Index j : support_of(bp.beta))
      CHECK(std::find(l0.support.begin(), l0.support.end(), j) !=
            l0.support.end());
    CHECK((bp.beta - beta0).lpNorm<Eigen::Infinity>() <= 1e-7);
    ++checked;
  }
  CHECK(checked == 15);
}

TEST_CASE("verify_prop3") {
  const MatrixXd X = gaussian_matrix(SeededRng(12), 30, 5);
  VectorXd beta0 = VectorXd::Zero(5);
  Prop3Options opts;
  opts.runs = 300;
  opts.calibration_R = 300;
  opts.alpha = 0.1;
  opts.threads = 2;
  const Prop3Result null = verify_prop3(X, beta0, opts);
  CHECK(null.tau > 0.0);
  CHECK(std::abs(null.fwer - 0.1) <= 4.0 * null.se);

  beta0(1) = 2.0;
  opts.tau = 1e6;
  const Prop3Result huge = verify_prop3(X, beta0, opts);
  CHECK(huge.fwer == 0.0);
  CHECK(huge.false_discovery_runs == 0);

  MatrixXd low = X;
  low.col(4) = low.col(0);
  try {
    verify_prop3(low, beta0, opts);
    FAIL("expected precondition failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
    CHECK(std::string(e.what()).find("full column rank") != std::string::npos);
  }
}
