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

#ifndef LASS0_EVALUATION_HPP
#define LASS0_EVALUATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lass0/qut.hpp"
#include "lass0/serialize.hpp"

namespace lass0 {

enum class SettingKind { kIidGaussian, kCsvDesign, kSegmentation };
enum class SignRule { kRandom, kFixedPositive };
enum class SupportRule { kUniformRandom, kEquispaced };

struct SimulationSetting {
  SettingKind kind = SettingKind::kIidGaussian;
  Index n = 50;
  Index p = 100;
  Index s0 = 0;
  double amplitude = 1.0;
  SignRule sign_rule = SignRule::kRandom;
  double sigma = 1.0;
  SupportRule support_rule = SupportRule::kUniformRandom;
  std::string csv_path;  // csv_design only
  bool csv_skip_header = false;

  // Segmentation forces p = n - 1 and equispaced jumps.
  SimulationSetting normalized() const;
  void validate() const;
};

SettingKind parse_setting_kind(const std::string& name);
const char* to_string(SettingKind kind);

struct Instance {
  DesignMatrix X;
  VectorXd y;
  GroundTruth truth;
};

// Lower-triangular 0/1 matrix, X(i, j) = 1 when i > j (1-based), n x (n-1).
MatrixXd segmentation_matrix(Index n);

// s0 indices at round(k (p + 1) / (s0 + 1)), k = 1..s0, 1-based.
SupportSet equispaced_support(Index p, Index s0);

// Design for a setting; rng is used only by iid_gaussian.
DesignMatrix make_design(const SimulationSetting& setting, SeededRng rng);

Instance generate_instance(const SimulationSetting& setting, SeededRng rng);
// Reuses a fixed design.
Instance generate_instance(const SimulationSetting& setting,
                           const DesignMatrix& X, SeededRng rng);

struct SupportMetrics {
  double fdp = 0.0;
  double tpp = 0.0;
  bool any_false = false;
  bool exact = false;
};

SupportMetrics score_support(const SupportSet& estimated,
                             const GroundTruth& truth);

struct CampaignOptions {
  SimulationSetting setting;
  LassoZeroConfig cfg;
  double alpha = 0.05;
  std::vector<Index> s0_grid = {0};
  int replications = 200;
  std::uint64_t seed = 1;
  CalibrationOptions calibration;  // alpha and threads are overridden
  QuantileEstimator quantile = QuantileEstimator::kAuto;
  bool known_sigma = false;        // calibrate T with setting.sigma
  bool regenerate_design = false;  // fresh iid design per instance
  int threads = 1;
};

struct CampaignRow {
  Index s0 = 0;
  int replications = 0;
  int failures = 0;
  double fdr = 0.0;
  double fdr_se = 0.0;
  double tpr = 0.0;
  double tpr_se = 0.0;
  double fwer = 0.0;
  double fwer_se = 0.0;
  double p_exact = 0.0;
  double p_exact_se = 0.0;
  bool se_defined = true;
};

struct CampaignResult {
  std::vector<CampaignRow> rows;
  std::vector<std::string> design_hashes;  // one per calibration
  std::map<std::string, double> quantiles;  // design hash -> q
  int calibrations = 0;
  std::vector<std::string> warnings;
};

CampaignResult run_campaign(const CampaignOptions& opts);

// Rows whose estimates moved by more than `limit` standard errors between
// a campaign and a larger nested one. Informational only.
std::vector<std::string> stability_flags(const CampaignResult& base,
                                         const CampaignResult& larger,
                                         double limit = 4.0);

// s0,fdr,fdr_se,tpr,tpr_se,fwer,p_exact,p_exact_se; undefined errors as NA.
std::string campaign_csv(const CampaignResult& result);
void write_campaign_csv(const std::string& path, const CampaignResult& result);

Json to_json(const SimulationSetting& s);
Json to_json(const CampaignOptions& opts);
Json to_json(const CampaignResult& result);

}  // namespace lass0

#endif  // LASS0_EVALUATION_HPP
