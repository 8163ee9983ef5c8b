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

#ifndef LASS0_THEORY_HPP
#define LASS0_THEORY_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lass0/qut.hpp"
#include "lass0/serialize.hpp"

namespace lass0 {

constexpr Index kMaxKernelDim = 12;
constexpr Index kMaxSnspSupport = 8;
constexpr Index kMaxL0Columns = 20;
constexpr Index kMaxL0Size = 6;

// Smallest rho with |b_S|_1 <= rho |b_Sc|_1 for every b in ker(X).
struct SnspReport {
  double rho_star = 0.0;  // infinity when ker(X) meets the S coordinates
  Index kernel_dim = 0;
  VectorXd witness;       // kernel vector attaining rho_star
  // Largest dual bound over the sign-pattern LPs; rho_star <= upper_bound.
  double upper_bound = 0.0;
  bool certified = false;
  int lp_solves = 0;

  bool finite() const { return std::isfinite(rho_star); }
};

SnspReport snsp_constant(const MatrixXd& X, const SupportSet& S0);
inline SnspReport snsp_constant(const DesignMatrix& X, const SupportSet& S0) {
  return snsp_constant(X.values(), S0);
}

// max over sign vectors t of |X_Sc' X_S (X_S' X_S)^{-1} t|_inf.
double uniform_ir_constant(const MatrixXd& X, const SupportSet& S0);
inline double uniform_ir_constant(const DesignMatrix& X, const SupportSet& S0) {
  return uniform_ir_constant(X.values(), S0);
}

// Thresholded basis pursuit on y = X beta0 + noise against the sign
// recovery guarantee under the stable null space property.
struct Theorem1Record {
  double rho_star = 0.0;
  std::optional<double> theta;
  double c_rho = 0.0;
  double noise_l1 = 0.0;  // |beta_l1(noise)|_1
  double beta_min = 0.0;
  bool premise_held = false;
  double constructive_tau = 0.0;
  bool constructive_tau_worked = false;
  bool sweep_worked = false;
  std::optional<double> sweep_tau;
  VectorXd beta_l1;  // BP solution on y

  // Premise held but no threshold recovers the signs.
  bool counterexample() const { return premise_held && !sweep_worked; }
};

double c_rho(double rho);
bool signs_recovered(const VectorXd& estimate, const VectorXd& beta0);

Theorem1Record verify_theorem1(const MatrixXd& X, const VectorXd& beta0,
                               const VectorXd& noise,
                               const ToleranceConfig& tol = {});
// Uses a precomputed constant instead of recomputing it.
Theorem1Record verify_theorem1(const MatrixXd& X, const VectorXd& beta0,
                               const VectorXd& noise, double rho_star,
                               const ToleranceConfig& tol = {});

struct Prop2Record {
  double theta = 0.0;
  double rho_star = 0.0;
  bool vacuous = false;  // theta >= 1
  bool holds = true;
  std::string message;
};

Prop2Record verify_prop2(const MatrixXd& X, const SupportSet& S0,
                         double slack = 1e-6);

struct L0Solution {
  SupportSet support;
  VectorXd beta;
  double residual = 0.0;
};

// Exhaustive search over supports of size 0..k_max in lexicographic order.
L0Solution l0_oracle(const MatrixXd& X, const VectorXd& y, Index k_max,
                     double residual_tol = 1e-8);

struct Prop3Options {
  double alpha = 0.05;
  double sigma = 1.0;
  int runs = 500;
  int calibration_R = 1000;
  std::uint64_t seed = 1;
  int threads = 1;
  std::optional<double> tau;  // skips calibration when set
};

struct Prop3Result {
  double tau = 0.0;
  int runs = 0;
  int false_discovery_runs = 0;
  double fwer = 0.0;
  double se = 0.0;  // binomial standard error at the nominal level
  std::vector<std::string> warnings;
};

// Lasso-Zero with q = 0, M = 1 and the known-sigma threshold.
Prop3Result verify_prop3(const MatrixXd& X, const VectorXd& beta0,
                         const Prop3Options& opts);

struct Theorem1CampaignOptions {
  Index n = 8;
  Index p = 16;
  Index s0 = 2;
  int instances = 100;
  double sigma = 1.0;
  // beta_min is drawn from margin * [1, 2] times C_rho |beta_l1(noise)|_1.
  double margin = 1.5;
  std::uint64_t seed = 1;
  int threads = 1;
  int max_draws = 0;  // 0: 50 * instances
};

struct Theorem1Campaign {
  std::vector<Theorem1Record> records;
  std::vector<SupportSet> supports;
  int rejected_draws = 0;
  int counterexamples = 0;
  int constructive_failures = 0;  // sweep succeeded, proof tau did not
};

Theorem1Campaign run_theorem1_campaign(const Theorem1CampaignOptions& opts);

struct Prop2CampaignOptions {
  Index n = 10;
  Index p = 15;
  std::vector<Index> support_sizes = {1, 2, 3};
  int instances = 50;
  std::uint64_t seed = 2;
  int threads = 1;
  int max_draws = 0;  // 0: 50 * instances
};

struct Prop2Campaign {
  std::vector<Prop2Record> records;
  std::vector<SupportSet> supports;
  int rejected_draws = 0;  // draws with theta >= 1
  int violations = 0;
};

Prop2Campaign run_prop2_campaign(const Prop2CampaignOptions& opts);

Json to_json(const SnspReport& r);
Json to_json(const Theorem1Record& r);
Json to_json(const Prop2Record& r);
Json to_json(const Prop3Result& r);
Json to_json(const Theorem1Campaign& c);
Json to_json(const Prop2Campaign& c);

}  // namespace lass0

#endif  // LASS0_THEORY_HPP
