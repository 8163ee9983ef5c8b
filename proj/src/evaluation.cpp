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

#include "lass0/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>

#include "lass0/parallel.hpp"

namespace lass0 {

NLOHMANN_JSON_SERIALIZE_ENUM(SignRule, {
                                           {SignRule::kRandom, "random"},
                                           {SignRule::kFixedPositive,
                                            "fixed_positive"},
                                       })

NLOHMANN_JSON_SERIALIZE_ENUM(SupportRule,
                             {
                                 {SupportRule::kUniformRandom, "uniform_random"},
                                 {SupportRule::kEquispaced, "equispaced"},
                             })

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Outcome {
  bool ok = false;
  SupportMetrics metrics;
  std::string error;
  std::string design_hash;
  double quantile = 0.0;
};

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double se_of(const std::vector<double>& v) {
  if (v.size() < 2) return kNaN;
  const VectorXd m = Eigen::Map<const VectorXd>(v.data(), static_cast<Index>(v.size()));
  return sample_sd(m) / std::sqrt(static_cast<double>(v.size()));
}

Json number_or_null(double v) {
  return std::isfinite(v) ? Json(v) : Json(nullptr);
}

}  // namespace

SettingKind parse_setting_kind(const std::string& name) {
  if (name == "iid_gaussian") return SettingKind::kIidGaussian;
  if (name == "csv_design") return SettingKind::kCsvDesign;
  if (name == "segmentation") return SettingKind::kSegmentation;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown setting '" + name +
                  "' (valid: iid_gaussian, csv_design, segmentation)");
}

const char* to_string(SettingKind kind) {
  switch (kind) {
    case SettingKind::kIidGaussian: return "iid_gaussian";
    case SettingKind::kCsvDesign: return "csv_design";
    case SettingKind::kSegmentation: return "segmentation";
  }
  return "?";
}

SimulationSetting SimulationSetting::normalized() const {
  SimulationSetting s = *this;
  if (s.kind == SettingKind::kSegmentation) {
    s.p = s.n - 1;
    s.support_rule = SupportRule::kEquispaced;
  }
  return s;
}

void SimulationSetting::validate() const {
  if (kind != SettingKind::kCsvDesign && (n < 2 || p < 1)) {
    throw Error(ErrorCode::kInvalidArgument, "setting needs n >= 2 and p >= 1");
  }
  if (kind == SettingKind::kSegmentation && p != n - 1) {
    throw Error(ErrorCode::kInvalidArgument, "segmentation needs p = n - 1");
  }
  if (kind == SettingKind::kCsvDesign && csv_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "csv_design needs a design path");
  }
  if (s0 < 0 || s0 > p) {
    throw Error(ErrorCode::kInvalidArgument,
                "s0 = " + std::to_string(s0) + " outside 0.." + std::to_string(p));
  }
  if (!(amplitude > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "amplitude must be positive");
  }
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  }
}

MatrixXd segmentation_matrix(Index n) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "segmentation needs n >= 2");
  }
  MatrixXd X = MatrixXd::Zero(n, n - 1);
  for (Index j = 0; j < n - 1; ++j) X.col(j).tail(n - 1 - j).setOnes();
  return X;
}

SupportSet equispaced_support(Index p, Index s0) {
  if (s0 < 0 || s0 > p) {
    throw Error(ErrorCode::kInvalidArgument, "s0 outside 0..p");
  }
  SupportSet out;
  for (Index k = 1; k <= s0; ++k) {
    const double pos = static_cast<double>(k * (p + 1)) / static_cast<double>(s0 + 1);
    out.push_back(static_cast<Index>(std::llround(pos)) - 1);
  }
  return out;
}

DesignMatrix make_design(const SimulationSetting& setting, SeededRng rng) {
  const SimulationSetting s = setting.normalized();
  switch (s.kind) {
    case SettingKind::kIidGaussian:
      return standardize(DesignMatrix(gaussian_matrix(rng, s.n, s.p)));
    case SettingKind::kSegmentation:
      return DesignMatrix(MatrixXd(segmentation_matrix(s.n).rowwise() -
                                   segmentation_matrix(s.n).colwise().mean()),
                          Centering::kColumns);
    case SettingKind::kCsvDesign:
      return standardize(
          DesignMatrix(read_csv_matrix(s.csv_path, s.csv_skip_header)));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown setting");
}

Instance generate_instance(const SimulationSetting& setting, SeededRng rng) {
  return generate_instance(setting, make_design(setting, rng.child(0)), rng);
}

Instance generate_instance(const SimulationSetting& setting,
                           const DesignMatrix& X, SeededRng rng) {
  SimulationSetting s = setting.normalized();
  if (s.kind == SettingKind::kCsvDesign) s.p = X.cols();
  s.validate();
  if (X.cols() != s.p || (s.kind != SettingKind::kCsvDesign && X.rows() != s.n)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "design does not match the setting dimensions");
  }
  SupportSet S;
  if (s.support_rule == SupportRule::kEquispaced) {
    S = equispaced_support(s.p, s.s0);
  } else {
    SeededRng pick = rng.child(1);
    S = sample_without_replacement(pick, s.p, s.s0);
  }
  VectorXd beta0 = VectorXd::Zero(s.p);
  SeededRng signs = rng.child(2);
  for (Index j : S) {
    const bool negative =
        s.sign_rule == SignRule::kRandom && signs.below(2) == 1;
    beta0(j) = negative ? -s.amplitude : s.amplitude;
  }
  VectorXd y =
      X.values() * beta0 + gaussian_vector(rng.child(3), X.rows(), s.sigma);
  if (s.kind == SettingKind::kSegmentation) y.array() -= y.mean();
  return Instance{X, std::move(y), GroundTruth(std::move(beta0), s.sigma)};
}

SupportMetrics score_support(const SupportSet& estimated,
                             const GroundTruth& truth) {
  const Index p = truth.beta0.size();
  SupportSet est = estimated;
  std::sort(est.begin(), est.end());
  est.erase(std::unique(est.begin(), est.end()), est.end());
  for (Index j : est) {
    if (j < 0 || j >= p) {
      throw Error(ErrorCode::kInvalidArgument,
                  "estimated index " + std::to_string(j + 1) +
                      " outside 1.." + std::to_string(p));
    }
  }
  SupportSet truth_set = truth.support;
  std::sort(truth_set.begin(), truth_set.end());
  SupportSet hits;
  std::set_intersection(est.begin(), est.end(), truth_set.begin(),
                        truth_set.end(), std::back_inserter(hits));
  const double false_pos = static_cast<double>(est.size() - hits.size());
  SupportMetrics m;
  m.fdp = false_pos / static_cast<double>(std::max<std::size_t>(est.size(), 1));
  m.tpp = truth_set.empty()
              ? (est.empty() ? 1.0 : 0.0)
              : static_cast<double>(hits.size()) / truth_set.size();
  m.any_false = false_pos > 0;
  m.exact = est == truth_set;
  return m;
}

CampaignResult run_campaign(const CampaignOptions& opts) {
  SimulationSetting setting = opts.setting.normalized();
  setting.s0 = 0;
  if (setting.kind != SettingKind::kCsvDesign) setting.validate();
  opts.cfg.validate();
  if (opts.replications < 1) {
    throw Error(ErrorCode::kInvalidArgument, "replications must be positive");
  }
  if (opts.s0_grid.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "s0 grid is empty");
  }
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  }

  CampaignResult out;
  const bool per_instance_design =
      opts.regenerate_design && setting.kind == SettingKind::kIidGaussian;
  const SeededRng design_rng(opts.seed, 0);
  const SeededRng instance_rng(opts.seed, 1);

  CalibrationOptions copts = opts.calibration;
  copts.alpha = opts.alpha;
  auto calibrate_design = [&](const DesignMatrix& X, int threads) {
    CalibrationOptions c = copts;
    c.threads = threads;
    return opts.known_sigma
               ? calibrate_known_sigma(X, opts.cfg, setting.sigma, c)
               : calibrate(X, opts.cfg, c);
  };

  std::optional<DesignMatrix> fixed;
  std::optional<PivotalCalibration> shared;
  if (!per_instance_design) {
    fixed = make_design(setting, design_rng.child(0));
    if (setting.kind == SettingKind::kCsvDesign) setting.p = fixed->cols();
    shared = calibrate_design(*fixed, opts.threads);
    out.calibrations = 1;
    out.design_hashes.push_back(shared->design_hash);
    out.quantiles[shared->design_hash] = shared->quantile(opts.quantile);
    for (const std::string& w : shared->warnings) out.warnings.push_back(w);
  }
  for (Index s0 : opts.s0_grid) {
    if (s0 < 0 || s0 > setting.p) {
      throw Error(ErrorCode::kInvalidArgument,
                  "s0 = " + std::to_string(s0) + " outside 0.." +
                      std::to_string(setting.p));
    }
  }

  LassoZeroConfig inner = opts.cfg;
  inner.threads = 1;
  for (std::size_t k = 0; k < opts.s0_grid.size(); ++k) {
    SimulationSetting cell = setting;
    cell.s0 = opts.s0_grid[k];
    std::vector<Outcome> results(static_cast<std::size_t>(opts.replications));
    parallel_for(results.size(), opts.threads, [&](std::size_t r) {
      const SeededRng rng = instance_rng.child(k).child(r);
      Outcome& o = results[r];
      try {
        const Instance inst = fixed ? generate_instance(cell, *fixed, rng)
                                    : generate_instance(cell, rng);
        std::optional<PivotalCalibration> own;
        if (!shared) own = calibrate_design(inst.X, 1);
        const PivotalCalibration& cal = shared ? *shared : *own;
        LassoZeroFit f = fit(inst.X, inst.y, inner, 0.0, rng.child(4));
        const double tau = threshold_from_calibration(cal, f, opts.quantile);
        f = rethreshold(std::move(f), tau, inner.threshold_rule);
        o.metrics = score_support(f.support, inst.truth);
        o.design_hash = cal.design_hash;
        o.quantile = cal.quantile(opts.quantile);
        o.ok = true;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kInvalidArgument ||
            e.code() == ErrorCode::kDimensionMismatch ||
            e.code() == ErrorCode::kParseError) {
          throw;
        }
        o.error = e.what();
      }
    });

    CampaignRow row;
    row.s0 = cell.s0;
    std::vector<double> fdp, tpp, any, exact;
    for (const Outcome& o : results) {
      if (!o.ok) {
        ++row.failures;
        continue;
      }
      fdp.push_back(o.metrics.fdp);
      tpp.push_back(o.metrics.tpp);
      any.push_back(o.metrics.any_false ? 1.0 : 0.0);
      exact.push_back(o.metrics.exact ? 1.0 : 0.0);
      if (per_instance_design) {
        ++out.calibrations;
        out.design_hashes.push_back(o.design_hash);
        out.quantiles[o.design_hash] = o.quantile;
      }
    }
    row.replications = static_cast<int>(fdp.size());
    if (row.failures > 0) {
      std::string first;
      for (const Outcome& o : results)
        if (!o.ok) {
          first = o.error;
          break;
        }
      out.warnings.push_back("s0=" + std::to_string(cell.s0) + ": " +
                             std::to_string(row.failures) +
                             " replications failed (first: " + first + ")");
    }
    if (fdp.empty()) {
      row.fdr = row.tpr = row.fwer = row.p_exact = kNaN;
      row.fdr_se = row.tpr_se = row.fwer_se = row.p_exact_se = kNaN;
      row.se_defined = false;
    } else {
      row.fdr = mean_of(fdp);
      row.tpr = mean_of(tpp);
      row.fwer = mean_of(any);
      row.p_exact = mean_of(exact);
      row.fdr_se = se_of(fdp);
      row.tpr_se = se_of(tpp);
      row.fwer_se = se_of(any);
      row.p_exact_se = se_of(exact);
      row.se_defined = fdp.size() >= 2;
    }
    if (!row.se_defined) {
      out.warnings.push_back("s0=" + std::to_string(cell.s0) +
                             ": standard errors undefined with fewer than two "
                             "successful replications");
    }
    out.rows.push_back(row);
  }
  return out;
}

std::vector<std::string> stability_flags(const CampaignResult& base,
                                         const CampaignResult& larger,
                                         double limit) {
  std::vector<std::string> flags;
  for (const CampaignRow& a : base.rows) {
    for (const CampaignRow& b : larger.rows) {
      if (a.s0 != b.s0) continue;
      auto check = [&](const char* name, double x, double y, double se) {
        if (std::isfinite(se) && se > 0.0 && std::abs(x - y) > limit * se) {
          std::ostringstream msg;
          msg << "s0=" << a.s0 << ": " << name << " moved from " << x << " to "
              << y << " (" << std::abs(x - y) / se << " SE)";
          flags.push_back(msg.str());
        }
      };
      check("fdr", a.fdr, b.fdr, a.fdr_se);
      check("tpr", a.tpr, b.tpr, a.tpr_se);
      check("fwer", a.fwer, b.fwer, a.fwer_se);
      check("p_exact", a.p_exact, b.p_exact, a.p_exact_se);
    }
  }
  return flags;
}

std::string campaign_csv(const CampaignResult& result) {
  std::ostringstream os;
  os << std::setprecision(12);
  auto cell = [&os](double v) {
    if (std::isfinite(v)) {
      os << v;
    } else {
      os << "NA";
    }
  };
  os << "s0,fdr,fdr_se,tpr,tpr_se,fwer,p_exact,p_exact_se\n";
  for (const CampaignRow& r : result.rows) {
    os << r.s0 << ',';
    cell(r.fdr);
    os << ',';
    cell(r.fdr_se);
    os << ',';
    cell(r.tpr);
    os << ',';
    cell(r.tpr_se);
    os << ',';
    cell(r.fwer);
    os << ',';
    cell(r.p_exact);
    os << ',';
    cell(r.p_exact_se);
    os << '\n';
  }
  return os.str();
}

void write_campaign_csv(const std::string& path, const CampaignResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write " + path);
  out << campaign_csv(result);
}

Json to_json(const SimulationSetting& s) {
  Json j{{"kind", to_string(s.kind)},
         {"n", s.n},
         {"p", s.p},
         {"amplitude", s.amplitude},
         {"sign_rule", s.sign_rule},
         {"sigma", s.sigma},
         {"support_rule", s.support_rule}};
  if (s.kind == SettingKind::kCsvDesign) {
    j["csv_path"] = s.csv_path;
    j["csv_skip_header"] = s.csv_skip_header;
  }
  return j;
}

Json to_json(const CampaignOptions& opts) {
  return Json{{"setting", to_json(opts.setting.normalized())},
              {"config", to_json(opts.cfg)},
              {"alpha", opts.alpha},
              {"s0_grid", opts.s0_grid},
              {"replications", opts.replications},
              {"seed", opts.seed},
              {"calibration_R", opts.calibration.R},
              {"calibration_seed", opts.calibration.seed},
              {"fit_gev", opts.calibration.fit_gev},
              {"quantile", to_string(opts.quantile)},
              {"known_sigma", opts.known_sigma},
              {"regenerate_design", opts.regenerate_design}};
}

Json to_json(const CampaignResult& result) {
  Json rows = Json::array();
  for (const CampaignRow& r : result.rows) {
    rows.push_back(Json{{"s0", r.s0},
                        {"replications", r.replications},
                        {"failures", r.failures},
                        {"fdr", number_or_null(r.fdr)},
                        {"fdr_se", number_or_null(r.fdr_se)},
                        {"tpr", number_or_null(r.tpr)},
                        {"tpr_se", number_or_null(r.tpr_se)},
                        {"fwer", number_or_null(r.fwer)},
                        {"fwer_se", number_or_null(r.fwer_se)},
                        {"p_exact", number_or_null(r.p_exact)},
                        {"p_exact_se", number_or_null(r.p_exact_se)},
                        {"se_defined", r.se_defined}});
  }
  Json q = Json::object();
  for (const auto& [hash, value] : result.quantiles) q[hash] = value;
  return Json{{"rows", std::move(rows)},
              {"calibrations", result.calibrations},
              {"design_hashes", result.design_hashes},
              {"quantiles", std::move(q)},
              {"warnings", result.warnings}};
}

}  // namespace lass0
