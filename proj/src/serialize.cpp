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

#include "lass0/serialize.hpp"

#include <fstream>
#include <sstream>

namespace lass0 {

NLOHMANN_JSON_SERIALIZE_ENUM(ThresholdRule, {
                                                {ThresholdRule::kHard, "hard"},
                                                {ThresholdRule::kSoft, "soft"},
                                            })

NLOHMANN_JSON_SERIALIZE_ENUM(
    DictionaryScalingKind,
    {
        {DictionaryScalingKind::kAuto, "auto"},
        {DictionaryScalingKind::kRaw, "raw"},
        {DictionaryScalingKind::kMatchStandardized, "match_standardized"},
        {DictionaryScalingKind::kMatchQuantile, "match_quantile"},
    })

NLOHMANN_JSON_SERIALIZE_ENUM(BpMethod, {
                                           {BpMethod::kInteriorPoint,
                                            "interior_point"},
                                           {BpMethod::kSimplex, "simplex"},
                                       })

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(ErrorCode::kParseError, std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError,
                std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T field_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

}  // namespace

const char* to_string(ThresholdRule rule) {
  return rule == ThresholdRule::kHard ? "hard" : "soft";
}

const char* to_string(QuantileEstimator choice) {
  switch (choice) {
    case QuantileEstimator::kAuto: return "auto";
    case QuantileEstimator::kEmpirical: return "empirical";
    case QuantileEstimator::kGev: return "gev";
  }
  return "?";
}

ThresholdRule parse_threshold_rule(const std::string& name) {
  if (name == "hard") return ThresholdRule::kHard;
  if (name == "soft") return ThresholdRule::kSoft;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown threshold rule '" + name + "' (valid: hard, soft)");
}

QuantileEstimator parse_quantile_estimator(const std::string& name) {
  if (name == "auto") return QuantileEstimator::kAuto;
  if (name == "empirical") return QuantileEstimator::kEmpirical;
  if (name == "gev") return QuantileEstimator::kGev;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown quantile estimator '" + name +
                  "' (valid: auto, empirical, gev)");
}

Json to_json(const LassoZeroConfig& cfg) {
  Json j;
  if (cfg.q) {
    j["q"] = *cfg.q;
  } else {
    j["q"] = nullptr;
  }
  j["M"] = cfg.M;
  j["threshold_rule"] = cfg.threshold_rule;
  j["dictionary_scaling"] = {{"kind", cfg.dictionary_scaling.kind},
                             {"alpha", cfg.dictionary_scaling.alpha},
                             {"mc_draws", cfg.dictionary_scaling.mc_draws}};
  j["seed"] = cfg.seed;
  j["tol"] = {{"feas_tol", cfg.tol.feas_tol},
              {"cert_tol", cfg.tol.cert_tol},
              {"zero_tol", cfg.tol.zero_tol},
              {"max_iterations", cfg.tol.max_iterations},
              {"method", cfg.tol.method}};
  return j;
}

LassoZeroConfig config_from_json(const Json& j) {
  LassoZeroConfig cfg;
  if (j.contains("q") && !j.at("q").is_null()) cfg.q = field<Index>(j, "q");
  cfg.M = field_or(j, "M", cfg.M);
  cfg.threshold_rule = field_or(j, "threshold_rule", cfg.threshold_rule);
  if (j.contains("dictionary_scaling")) {
    const Json& d = j.at("dictionary_scaling");
    cfg.dictionary_scaling.kind = field_or(d, "kind", cfg.dictionary_scaling.kind);
    cfg.dictionary_scaling.alpha =
        field_or(d, "alpha", cfg.dictionary_scaling.alpha);
    cfg.dictionary_scaling.mc_draws =
        field_or(d, "mc_draws", cfg.dictionary_scaling.mc_draws);
  }
  cfg.seed = field_or(j, "seed", cfg.seed);
  if (j.contains("tol")) {
    const Json& t = j.at("tol");
    cfg.tol.feas_tol = field_or(t, "feas_tol", cfg.tol.feas_tol);
    cfg.tol.cert_tol = field_or(t, "cert_tol", cfg.tol.cert_tol);
    cfg.tol.zero_tol = field_or(t, "zero_tol", cfg.tol.zero_tol);
    cfg.tol.max_iterations =
        field_or(t, "max_iterations", cfg.tol.max_iterations);
    cfg.tol.method = field_or(t, "method", cfg.tol.method);
  }
  return cfg;
}

Json to_json(const GevParams& g) {
  return Json{{"location", g.location},
              {"scale", g.scale},
              {"shape", g.shape},
              {"log_likelihood", g.log_likelihood}};
}

GevParams gev_from_json(const Json& j) {
  GevParams g;
  g.location = field<double>(j, "location");
  g.scale = field<double>(j, "scale");
  g.shape = field<double>(j, "shape");
  g.log_likelihood = field_or(j, "log_likelihood", 0.0);
  return g;
}

Json to_json(const PivotalCalibration& cal) {
  Json j;
  j["statistic"] = cal.sigma ? "T" : "P";
  j["design_hash"] = cal.design_hash;
  j["config"] = to_json(cal.config);
  j["seed"] = cal.seed;
  j["R"] = cal.R;
  j["failures"] = cal.failures;
  j["alpha"] = cal.alpha;
  j["mad_consistency"] = cal.mad_consistency;
  if (cal.sigma) {
    j["sigma"] = *cal.sigma;
  } else {
    j["sigma"] = nullptr;
  }
  j["q_alpha_empirical"] = cal.q_alpha_empirical;
  if (cal.q_alpha_gev) {
    j["q_alpha_gev"] = *cal.q_alpha_gev;
  } else {
    j["q_alpha_gev"] = nullptr;
  }
  if (cal.gev) {
    j["gev"] = to_json(*cal.gev);
  } else {
    j["gev"] = nullptr;
  }
  Json table = Json::array();
  for (const QuantileRow& row : cal.table) {
    Json r{{"alpha", row.alpha}, {"empirical", row.empirical}};
    if (row.gev) {
      r["gev"] = *row.gev;
    } else {
      r["gev"] = nullptr;
    }
    table.push_back(std::move(r));
  }
  j["table"] = std::move(table);
  j["warnings"] = cal.warnings;
  j["samples"] = cal.samples;
  return j;
}

PivotalCalibration calibration_from_json(const Json& j) {
  PivotalCalibration cal;
  cal.design_hash = field<std::string>(j, "design_hash");
  cal.config = config_from_json(field<Json>(j, "config"));
  cal.seed = field<std::uint64_t>(j, "seed");
  cal.R = field<int>(j, "R");
  cal.failures = field_or(j, "failures", 0);
  cal.alpha = field<double>(j, "alpha");
  cal.mad_consistency = field_or(j, "mad_consistency", kMadConsistency);
  if (j.contains("sigma") && !j.at("sigma").is_null())
    cal.sigma = field<double>(j, "sigma");
  cal.q_alpha_empirical = field<double>(j, "q_alpha_empirical");
  if (j.contains("q_alpha_gev") && !j.at("q_alpha_gev").is_null())
    cal.q_alpha_gev = field<double>(j, "q_alpha_gev");
  if (j.contains("gev") && !j.at("gev").is_null())
    cal.gev = gev_from_json(j.at("gev"));
  if (j.contains("table")) {
    for (const Json& r : j.at("table")) {
      QuantileRow row;
      row.alpha = field<double>(r, "alpha");
      row.empirical = field<double>(r, "empirical");
      if (r.contains("gev") && !r.at("gev").is_null())
        row.gev = field<double>(r, "gev");
      cal.table.push_back(row);
    }
  }
  cal.warnings = field_or(j, "warnings", std::vector<std::string>{});
  cal.samples = field<std::vector<double>>(j, "samples");
  if (static_cast<int>(cal.samples.size()) + cal.failures != cal.R) {
    throw Error(ErrorCode::kParseError,
                "calibration has " + std::to_string(cal.samples.size()) +
                    " samples and " + std::to_string(cal.failures) +
                    " failures but R = " + std::to_string(cal.R));
  }
  return cal;
}

Json to_json(const VectorXd& v) {
  return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

VectorXd vector_from_json(const Json& j) {
  const std::vector<double> v = j.get<std::vector<double>>();
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Index>(v.size()));
}

Json support_to_json(const SupportSet& s) {
  Json j = Json::array();
  for (Index i : s) j.push_back(i + 1);
  return j;
}

Json to_json(const LassoZeroFit& fit) {
  Json j;
  j["tau"] = fit.tau;
  j["threshold_rule"] = fit.rule;
  j["support"] = support_to_json(fit.support);
  j["beta_hat"] = to_json(fit.beta_hat);
  j["beta_l1"] = to_json(fit.beta_l1);
  return j;
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kParseError, "write failed for " + path);
}

Json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

void save_calibration(const std::string& path, const PivotalCalibration& cal) {
  write_json(path, to_json(cal));
}

PivotalCalibration load_calibration(const std::string& path) {
  return calibration_from_json(read_json(path));
}

}  // namespace lass0
