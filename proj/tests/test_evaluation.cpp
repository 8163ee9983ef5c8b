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

#include <set>

#include "doctest.h"
#include "lass0/evaluation.hpp"

using namespace lass0;

namespace {

// Reference metrics straight from set arithmetic.
SupportMetrics metrics_by_sets(const std::set<Index>& est,
                               const std::set<Index>& truth) {
  std::size_t false_pos = 0, true_pos = 0;
  for (Index j : est) (truth.count(j) ? true_pos : false_pos)++;
  SupportMetrics m;
  m.fdp = est.empty() ? 0.0 : static_cast<double>(false_pos) / est.size();
  m.tpp = truth.empty() ? (est.empty() ? 1.0 : 0.0)
                        : static_cast<double>(true_pos) / truth.size();
  m.any_false = false_pos > 0;
  m.exact = est == truth;
  return m;
}

GroundTruth truth_on(Index p, const SupportSet& S) {
  VectorXd b = VectorXd::Zero(p);
  for (Index j : S) b(j) = 1.0;
  return GroundTruth(b, 1.0);
}

CampaignOptions small_campaign() {
  CampaignOptions o;
  o.setting.n = 20;
  o.setting.p = 30;
  o.setting.amplitude = 2.0;
  o.cfg.M = 3;
  o.alpha = 0.1;
  o.s0_grid = {0, 2};
  o.replications = 12;
  o.calibration.R = 40;
  o.calibration.fit_gev = false;
  o.quantile = QuantileEstimator::kEmpirical;
  return o;
}

}  // namespace

TEST_CASE("segmentation design and support") {
  const MatrixXd X = segmentation_matrix(5);
  MatrixXd expect(5, 4);
  expect << 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 0, 1, 1, 1, 1;
  CHECK(X == expect);
  CHECK(equispaced_support(299, 3) == SupportSet{74, 149, 224});
  CHECK(equispaced_support(10, 0).empty());
  CHECK(equispaced_support(4, 4) == SupportSet{0, 1, 2, 3});

  SimulationSetting s;
  s.kind = SettingKind::kSegmentation;
  s.n = 300;
  s.p = 7;  // overridden
  s.s0 = 3;
  s.amplitude = 3.0;
  const Instance inst = generate_instance(s, SeededRng(1));
  CHECK(inst.X.cols() == 299);
  CHECK(inst.X.centered());
  CHECK(inst.truth.support == SupportSet{74, 149, 224});
  CHECK(std::abs(inst.y.mean()) < 1e-12);
  CHECK(inst.X.values().colwise().sum().cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("generate_instance iid gaussian") {
  SimulationSetting s;
  s.n = 30;
  s.p = 60;
  s.s0 = 0;
  s.sigma = 2.0;
  const SeededRng rng(5);
  const Instance null = generate_instance(s, rng);
  CHECK(null.truth.support.empty());
  CHECK(null.y == gaussian_vector(rng.child(3), 30, 2.0));
  CHECK(null.X.standardized());

  s.s0 = 6;
  s.amplitude = 0.75;
  int neg = 0, pos = 0;
  for (int t = 0; t < 20; ++t) {
    const Instance inst = generate_instance(s, SeededRng(10 + t));
    REQUIRE(inst.truth.support.size() == 6);
    for (Index j : inst.truth.support) {
      const double b = inst.truth.beta0(j);
      CHECK(std::abs(b) == 0.75);
      (b > 0 ? pos : neg)++;
    }
  }
  CHECK(pos > 0);
  CHECK(neg > 0);

  s.sign_rule = SignRule::kFixedPositive;
  const Instance plus = generate_instance(s, SeededRng(3));
  for (Index j : plus.truth.support) CHECK(plus.truth.beta0(j) == 0.75);

  s.s0 = 61;
  CHECK_THROWS_AS(generate_instance(s, SeededRng(3)), Error);
  CHECK_THROWS_AS(parse_setting_kind("banana"), Error);
}

TEST_CASE("score_support examples") {
  const GroundTruth t = truth_on(5, {0, 1});
  SupportMetrics m = score_support({0, 1}, t);
  CHECK(m.fdp == 0.0);
  CHECK(m.tpp == 1.0);
  CHECK(m.exact);
  m = score_support({}, t);
  CHECK(m.fdp == 0.0);
  CHECK(m.tpp == 0.0);
  CHECK(!m.any_false);
  m = score_support({1, 2}, t);
  CHECK(m.fdp == 0.5);
  CHECK(m.tpp == 0.5);
  CHECK(m.any_false);
  CHECK(!m.exact);
  m = score_support({}, truth_on(5, {}));
  CHECK(m.tpp == 1.0);
  CHECK(m.exact);
  CHECK_THROWS_AS(score_support({5}, t), Error);
}

TEST_CASE("score_support agrees with set arithmetic") {
  SeededRng rng(21);
  for (int t = 0; t < 500; ++t) {
    const Index p = 1 + static_cast<Index>(rng.below(15));
    const SupportSet S = sample_without_replacement(rng, p, rng.below(p + 1));
    SupportSet E = sample_without_replacement(rng, p, rng.below(p + 1));
    const std::set<Index> ref_truth(S.begin(), S.end());
    const std::set<Index> ref_est(E.begin(), E.end());
    const SupportMetrics want = metrics_by_sets(ref_est, ref_truth);
    std::reverse(E.begin(), E.end());
    const SupportMetrics got = score_support(E, truth_on(p, S));
    CHECK(got.fdp == doctest::Approx(want.fdp));
    CHECK(got.tpp == doctest::Approx(want.tpp));
    CHECK(got.any_false == want.any_false);
    CHECK(got.exact == want.exact);
    CHECK(got.fdp <= (got.any_false ? 1.0 : 0.0));
  }
}

TEST_CASE("run_campaign is deterministic and ordered") {
  CampaignOptions o = small_campaign();
  const CampaignResult a = run_campaign(o);
  o.threads = 3;
  const CampaignResult b = run_campaign(o);
  CHECK(campaign_csv(a) == campaign_csv(b));
  CHECK(to_json(a).dump() == to_json(b).dump());
  REQUIRE(a.rows.size() == 2);
  CHECK(a.calibrations == 1);
  for (const CampaignRow& r : a.rows) {
    CHECK(r.fdr <= r.fwer);
    CHECK(r.replications + r.failures == 12);
    CHECK(r.se_defined);
  }
  CHECK(a.rows[0].tpr == doctest::Approx(1.0 - a.rows[0].fwer));
  CHECK(campaign_csv(a).rfind("s0,fdr,fdr_se,tpr,tpr_se,fwer,p_exact,p_exact_se\n", 0) == 0);
}

TEST_CASE("run_campaign edge cases") {
  CampaignOptions o = small_campaign();
  o.replications = 1;
  o.s0_grid = {1};
  const CampaignResult one = run_campaign(o);
  CHECK(!one.rows[0].se_defined);
  CHECK(campaign_csv(one).find("NA") != std::string::npos);
  CHECK(!one.warnings.empty());

  o.s0_grid = {31};
  CHECK_THROWS_AS(run_campaign(o), Error);

  CampaignOptions seg = small_campaign();
  seg.setting.kind = SettingKind::kSegmentation;
  seg.setting.amplitude = 3.0;
  seg.s0_grid = {2};
  seg.replications = 4;
  const CampaignResult r = run_campaign(seg);
  CHECK(r.rows[0].replications + r.rows[0].failures == 4);

  CampaignOptions known = small_campaign();
  known.known_sigma = true;
  known.cfg.q = 0;
  known.cfg.M = 1;
  known.setting.p = 10;
  known.s0_grid = {0};
  CHECK(run_campaign(known).rows[0].replications == 12);
}

TEST_CASE("stability flags") {
  CampaignResult a, b;
  CampaignRow r;
  r.s0 = 2;
  r.fdr = 0.1;
  r.fdr_se = 0.01;
  r.tpr = r.fwer = r.p_exact = 0.5;
  r.tpr_se = r.fwer_se = r.p_exact_se = 0.05;
  a.rows.push_back(r);
  r.fdr = 0.2;
  b.rows.push_back(r);
  const auto flags = stability_flags(a, b);
  REQUIRE(flags.size() == 1);
  CHECK(flags[0].find("fdr") != std::string::npos);
}
