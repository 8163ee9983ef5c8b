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

// lass0: fit, calibrate, simulate and verify from the command line.
//
// Exit codes: 0 ok, 1 theory counterexample, 2 usage or input error,
// 3 numerical failure.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lass0/evaluation.hpp"
#include "lass0/parallel.hpp"
#include "lass0/serialize.hpp"
#include "lass0/theory.hpp"
#include "lass0/version.hpp"

namespace fs = std::filesystem;
using namespace lass0;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kConstantColumn:
    case ErrorCode::kParseError:
    case ErrorCode::kEnumerationTooLarge:
      return kExitUsage;
    default:
      return kExitNumerical;
  }
}

struct Common {
  std::string out = ".";
  std::uint64_t seed = 1;
  int threads = 0;
  std::vector<std::string> argv;
};

struct ModelFlags {
  std::optional<Index> q;
  int M = 30;
  std::string threshold_rule = "hard";
  double alpha = 0.05;
  int R = 500;
  std::optional<double> sigma;
  std::string quantile = "auto";
  bool no_gev = false;

  LassoZeroConfig config(std::uint64_t seed, int threads) const {
    LassoZeroConfig cfg;
    cfg.q = q;
    cfg.M = M;
    cfg.threshold_rule = parse_threshold_rule(threshold_rule);
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.validate();
    return cfg;
  }

  CalibrationOptions calibration(std::uint64_t seed, int threads) const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "--alpha must lie in (0, 1)");
    }
    CalibrationOptions c;
    c.R = R;
    c.alpha = alpha;
    c.seed = seed;
    c.fit_gev = !no_gev;
    c.threads = threads;
    return c;
  }
};

void add_model_flags(CLI::App* app, ModelFlags& m) {
  app->add_option("--q", m.q, "Noise dictionary width (default n)");
  app->add_option("--M", m.M, "Number of noise dictionaries")->capture_default_str();
  app->add_option("--threshold-rule", m.threshold_rule, "hard or soft")
      ->capture_default_str();
  app->add_option("--alpha", m.alpha, "Level of the universal threshold")
      ->capture_default_str();
  app->add_option("--R", m.R, "Calibration replications")->capture_default_str();
  app->add_option("--sigma", m.sigma,
                  "Known noise level; calibrates ||beta_l1(e)||_inf directly");
  app->add_option("--quantile", m.quantile, "auto, empirical or gev")
      ->capture_default_str();
  app->add_flag("--no-gev", m.no_gev, "Skip the GEV fit of the calibration sample");
}

void add_common_flags(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "Output directory")
      ->capture_default_str()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app->add_option("--threads", c.threads, "Worker threads (0: all cores)")
      ->capture_default_str();
}

std::string output_path(const Common& c, const std::string& name) {
  fs::create_directories(c.out);
  return (fs::path(c.out) / name).string();
}

void write_manifest(const Common& c, const std::string& subcommand,
                    Json config, const std::vector<std::string>& outputs,
                    double seconds, const std::string& design_hash = "") {
  Json m;
  m["tool"] = "lass0";
  m["version"] = kVersion;
  m["subcommand"] = subcommand;
  m["argv"] = c.argv;
  m["seed"] = c.seed;
  m["threads"] = resolve_threads(c.threads);
  m["config"] = std::move(config);
  if (!design_hash.empty()) m["design_hash"] = design_hash;
  m["outputs"] = outputs;
  m["wall_time_seconds"] = seconds;
  write_json(output_path(c, "manifest.json"), m);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

DesignMatrix load_design(const std::string& path, bool skip_header, bool raw) {
  DesignMatrix X(read_csv_matrix(path, skip_header));
  return raw ? X : standardize(X);
}

// ---------------------------------------------------------------- fit

struct FitFlags {
  std::string design;
  std::string response;
  std::string calibration;
  bool skip_header = false;
  bool raw_design = false;
};

int cmd_fit(const Common& c, const ModelFlags& m, const FitFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  const DesignMatrix X = load_design(f.design, f.skip_header, f.raw_design);
  const VectorXd y = read_csv_vector(f.response, f.skip_header);
  if (y.size() != X.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "response has " + std::to_string(y.size()) +
                    " entries but the design has " + std::to_string(X.rows()) +
                    " rows");
  }
  const LassoZeroConfig cfg = m.config(c.seed, c.threads);
  const CalibrationOptions copts = m.calibration(c.seed, c.threads);
  const QuantileEstimator estimator = parse_quantile_estimator(m.quantile);
  const std::string hash = design_hash(X.values());

  std::vector<std::string> outputs = {"fit.json"};
  PivotalCalibration cal;
  std::string cal_ref;
  if (!f.calibration.empty()) {
    cal = load_calibration(f.calibration);
    if (cal.design_hash != hash) {
      throw Error(ErrorCode::kInvalidArgument,
                  "calibration " + f.calibration + " was computed for design " +
                      cal.design_hash + ", not " + hash);
    }
    if (to_json(cal.config) != to_json(cfg)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "calibration " + f.calibration +
                      " used a different Lasso-Zero configuration");
    }
    cal_ref = f.calibration;
  } else {
    cal = m.sigma ? calibrate_known_sigma(X, cfg, *m.sigma, copts)
                  : calibrate(X, cfg, copts);
    save_calibration(output_path(c, "calibration.json"), cal);
    cal_ref = "calibration.json";
    outputs.push_back("calibration.json");
  }

  LassoZeroFit fitted = fit(X, y, cfg, 0.0);
  std::vector<std::string> warnings = cal.warnings;
  const VectorXd yc = X.centered() ? VectorXd(y.array() - y.mean()) : y;
  double tau;
  std::optional<double> s_of_y;
  if (cal.sigma) {
    tau = threshold_from_calibration(cal, fitted, estimator);
  } else if (yc.lpNorm<Eigen::Infinity>() == 0.0) {
    tau = cal.quantile(estimator);
    warnings.push_back(
        "response is zero: s(y) is undefined, tau reported at unit noise scale");
  } else {
    s_of_y = noise_scale_s(fitted.replicate_gammas, cfg.tol.zero_tol,
                           cal.mad_consistency);
    tau = threshold_from_calibration(cal, fitted, estimator);
  }
  fitted = rethreshold(std::move(fitted), tau, cfg.threshold_rule);

  Json j = to_json(fitted);
  if (X.standardized())
    j["beta_hat_original_units"] = to_json(X.coefficients_to_original(fitted.beta_hat));
  j["s_of_y"] = s_of_y ? Json(*s_of_y) : Json(nullptr);
  j["quantile"] = {{"estimator", to_string(estimator)},
                   {"alpha", cal.alpha},
                   {"value", cal.quantile(estimator)}};
  j["calibration"] = {{"path", cal_ref},
                      {"design_hash", cal.design_hash},
                      {"statistic", cal.sigma ? "T" : "P"},
                      {"seed", cal.seed},
                      {"R", cal.R}};
  j["config"] = to_json(cfg);
  j["warnings"] = warnings;
  write_json(output_path(c, "fit.json"), j);

  Json config{{"design", f.design},
              {"response", f.response},
              {"skip_header", f.skip_header},
              {"raw_design", f.raw_design},
              {"lasso_zero", to_json(cfg)},
              {"alpha", m.alpha},
              {"R", m.R},
              {"quantile", m.quantile}};
  write_manifest(c, "fit", std::move(config), outputs, seconds_since(start), hash);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- calibrate

struct CalibrateFlags {
  std::string design;
  bool skip_header = false;
  bool raw_design = false;
  std::vector<double> alpha_grid = {0.01, 0.05, 0.1};
};

int cmd_calibrate(const Common& c, const ModelFlags& m, const CalibrateFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  const DesignMatrix X = load_design(f.design, f.skip_header, f.raw_design);
  const LassoZeroConfig cfg = m.config(c.seed, c.threads);
  CalibrationOptions copts = m.calibration(c.seed, c.threads);
  for (double a : f.alpha_grid) {
    if (!(a > 0.0 && a < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "--alpha-grid entries must lie in (0, 1)");
    }
  }
  copts.alpha_grid = f.alpha_grid;
  const PivotalCalibration cal = m.sigma
                                     ? calibrate_known_sigma(X, cfg, *m.sigma, copts)
                                     : calibrate(X, cfg, copts);
  save_calibration(output_path(c, "calibration.json"), cal);
  Json config{{"design", f.design},
              {"skip_header", f.skip_header},
              {"raw_design", f.raw_design},
              {"lasso_zero", to_json(cfg)},
              {"alpha", m.alpha},
              {"alpha_grid", f.alpha_grid},
              {"R", m.R},
              {"fit_gev", !m.no_gev}};
  if (m.sigma) config["sigma"] = *m.sigma;
  write_manifest(c, "calibrate", std::move(config), {"calibration.json"},
                 seconds_since(start), cal.design_hash);
  for (const std::string& w : cal.warnings) std::cerr << "warning: " << w << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateFlags {
  std::string setting = "iid_gaussian";
  std::string design;
  bool skip_header = false;
  Index n = 50;
  Index p = 100;
  double amplitude = 1.0;
  std::string sign_rule = "random";
  double noise_sigma = 1.0;
  std::vector<Index> s0_grid = {0};
  int replications = 200;
  bool known_sigma = false;
  bool regenerate_design = false;
  bool full_scale = false;
};

int cmd_simulate(const Common& c, ModelFlags m, SimulateFlags f) {
  const auto start = std::chrono::steady_clock::now();
  CampaignOptions o;
  o.setting.kind = parse_setting_kind(f.setting);
  if (f.full_scale) {
    f.n = 100;
    f.p = 200;
    f.replications = 500;
    std::cerr << "warning: full-scale campaign (n=100, p=200, 500 "
                 "replications per cell); expect a long runtime\n";
  }
  o.setting.n = f.n;
  o.setting.p = f.p;
  o.setting.amplitude = f.amplitude;
  if (f.sign_rule == "random") {
    o.setting.sign_rule = SignRule::kRandom;
  } else if (f.sign_rule == "positive") {
    o.setting.sign_rule = SignRule::kFixedPositive;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown sign rule '" + f.sign_rule + "' (valid: random, positive)");
  }
  o.setting.sigma = f.noise_sigma;
  o.setting.csv_path = f.design;
  o.setting.csv_skip_header = f.skip_header;
  if (m.sigma) {
    o.known_sigma = true;
    o.setting.sigma = *m.sigma;
  }
  o.known_sigma = o.known_sigma || f.known_sigma;
  o.cfg = m.config(c.seed, c.threads);
  o.alpha = m.alpha;
  o.s0_grid = f.s0_grid;
  o.replications = f.replications;
  o.seed = c.seed;
  o.calibration = m.calibration(c.seed, c.threads);
  o.quantile = parse_quantile_estimator(m.quantile);
  o.regenerate_design = f.regenerate_design;
  o.threads = c.threads;

  const CampaignResult result = run_campaign(o);
  write_campaign_csv(output_path(c, "campaign.csv"), result);
  write_json(output_path(c, "campaign.json"), to_json(result));
  write_manifest(c, "simulate", to_json(o), {"campaign.csv", "campaign.json"},
                 seconds_since(start),
                 result.design_hashes.size() == 1 ? result.design_hashes[0] : "");
  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << campaign_csv(result);
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyFlags {
  std::string suite = "all";
  std::optional<Index> s0;
  int instances = 0;  // 0: suite default
  std::string design;
  bool skip_header = false;
  std::vector<Index> support;  // 1-based, for the snsp suite
  double alpha = 0.05;
  int R = 1000;
  int runs = 500;
};

int cmd_verify(const Common& c, const VerifyFlags& f) {
  const auto start = std::chrono::steady_clock::now();
  const bool all = f.suite == "all";
  if (!all && f.suite != "theorem1" && f.suite != "prop2" && f.suite != "prop3" &&
      f.suite != "snsp") {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown suite '" + f.suite +
                    "' (valid: all, theorem1, prop2, prop3, snsp)");
  }
  Json report;
  bool counterexample = false;

  if (all || f.suite == "theorem1") {
    Theorem1CampaignOptions o;
    if (f.s0) o.s0 = *f.s0;
    if (f.instances > 0) o.instances = f.instances;
    o.seed = c.seed;
    o.threads = c.threads;
    const Theorem1Campaign t = run_theorem1_campaign(o);
    counterexample = counterexample || t.counterexamples > 0;
    Json j = to_json(t);
    j["setup"] = {{"n", o.n}, {"p", o.p}, {"s0", o.s0}, {"sigma", o.sigma},
                  {"margin", o.margin}};
    report["theorem1"] = std::move(j);
    std::cout << "theorem1: " << t.records.size() << " instances, "
              << t.counterexamples << " counterexamples, "
              << t.constructive_failures << " constructive-tau failures\n";
  }
  if (all || f.suite == "prop2") {
    Prop2CampaignOptions o;
    if (f.s0) o.support_sizes = {*f.s0};
    if (f.instances > 0) o.instances = f.instances;
    o.seed = c.seed + 1;
    o.threads = c.threads;
    const Prop2Campaign p = run_prop2_campaign(o);
    counterexample = counterexample || p.violations > 0;
    Json j = to_json(p);
    j["setup"] = {{"n", o.n}, {"p", o.p}, {"support_sizes", o.support_sizes}};
    report["prop2"] = std::move(j);
    std::cout << "prop2: " << p.records.size() << " instances, " << p.violations
              << " violations\n";
  }
  if (all || f.suite == "prop3") {
    MatrixXd X;
    if (!f.design.empty()) {
      X = read_csv_matrix(f.design, f.skip_header);
    } else {
      X = gaussian_matrix(SeededRng(c.seed, 7), 50, 10);
    }
    VectorXd beta0 = VectorXd::Zero(X.cols());
    SeededRng pick(c.seed, 8);
    for (Index j : sample_without_replacement(pick, X.cols(), std::min<Index>(3, X.cols())))
      beta0(j) = 1.0;
    Prop3Options o;
    o.alpha = f.alpha;
    o.calibration_R = f.R;
    o.runs = f.runs;
    o.seed = c.seed;
    o.threads = c.threads;
    const Prop3Result r = verify_prop3(X, beta0, o);
    Json j = to_json(r);
    j["alpha"] = f.alpha;
    j["bound"] = f.alpha + 3.0 * r.se;
    j["within_bound"] = r.fwer <= f.alpha + 3.0 * r.se;
    j["design_hash"] = design_hash(X);
    j["support"] = support_to_json(support_of(beta0));
    report["prop3"] = std::move(j);
    std::cout << "prop3: FWER " << r.fwer << " over " << r.runs
              << " runs (bound " << f.alpha + 3.0 * r.se << ")\n";
  }
  if (f.suite == "snsp") {
    if (f.design.empty() || f.support.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "snsp suite needs --design and --support");
    }
    const MatrixXd X = read_csv_matrix(f.design, f.skip_header);
    SupportSet S;
    for (Index j : f.support) S.push_back(j - 1);
    const SnspReport rep = snsp_constant(X, S);
    Json j = to_json(rep);
    try {
      j["theta"] = uniform_ir_constant(X, S);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSingularGram) throw;
      j["theta"] = nullptr;
    }
    report["snsp"] = std::move(j);
    std::cout << "snsp: rho* = " << rep.rho_star << '\n';
  }

  report["counterexample_found"] = counterexample;
  write_json(output_path(c, "verify.json"), report);
  Json config{{"suite", f.suite},
              {"instances", f.instances},
              {"alpha", f.alpha},
              {"R", f.R},
              {"runs", f.runs}};
  if (f.s0) config["s0"] = *f.s0;
  if (!f.design.empty()) config["design"] = f.design;
  write_manifest(c, "verify", std::move(config), {"verify.json"},
                 seconds_since(start));
  return counterexample ? kExitCounterexample : kExitOk;
}

int run(const std::vector<std::string>& args);

int cmd_replay(const std::string& manifest, const std::string& out) {
  const Json m = read_json(manifest);
  if (!m.contains("argv") || !m.at("argv").is_array()) {
    throw Error(ErrorCode::kParseError, manifest + " has no argv");
  }
  std::vector<std::string> args = {"lass0"};
  for (const std::string& a : m.at("argv").get<std::vector<std::string>>())
    args.push_back(a);
  if (!out.empty()) {
    args.push_back("--out");
    args.push_back(out);
  }
  return run(args);
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"Lasso-Zero sparse support recovery toolkit", "lass0"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  common.argv.assign(args.begin() + 1, args.end());

  ModelFlags fit_model, cal_model, sim_model;
  FitFlags fit_flags;
  CalibrateFlags cal_flags;
  SimulateFlags sim_flags;
  VerifyFlags verify_flags;
  std::string replay_manifest, replay_out;

  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit Lasso-Zero with a calibrated threshold");
  fit_cmd->add_option("--design", fit_flags.design, "Design matrix CSV")->required();
  fit_cmd->add_option("--response", fit_flags.response, "Response CSV")->required();
  fit_cmd->add_option("--calibration", fit_flags.calibration,
                      "Reuse a calibration JSON for the same design");
  fit_cmd->add_flag("--skip-header", fit_flags.skip_header, "CSV files have a header row");
  fit_cmd->add_flag("--raw-design", fit_flags.raw_design, "Do not standardize the design");
  add_model_flags(fit_cmd, fit_model);
  add_common_flags(fit_cmd, common);

  CLI::App* cal_cmd = app.add_subcommand("calibrate", "Calibrate the universal threshold");
  cal_cmd->add_option("--design", cal_flags.design, "Design matrix CSV")->required();
  cal_cmd->add_option("--alpha-grid", cal_flags.alpha_grid, "Levels for the quantile table")
      ->capture_default_str();
  cal_cmd->add_flag("--skip-header", cal_flags.skip_header, "CSV has a header row");
  cal_cmd->add_flag("--raw-design", cal_flags.raw_design, "Do not standardize the design");
  add_model_flags(cal_cmd, cal_model);
  add_common_flags(cal_cmd, common);

  CLI::App* sim_cmd = app.add_subcommand("simulate", "Run a support recovery campaign");
  sim_model.M = 10;
  sim_model.R = 200;
  sim_cmd->add_option("--setting", sim_flags.setting,
                      "iid_gaussian, csv_design or segmentation")
      ->capture_default_str();
  sim_cmd->add_option("--design", sim_flags.design, "Design CSV for csv_design");
  sim_cmd->add_flag("--skip-header", sim_flags.skip_header, "CSV has a header row");
  sim_cmd->add_option("--n", sim_flags.n, "Observations")->capture_default_str();
  sim_cmd->add_option("--p", sim_flags.p, "Predictors")->capture_default_str();
  sim_cmd->add_option("--amplitude", sim_flags.amplitude, "Nonzero magnitude")
      ->capture_default_str();
  sim_cmd->add_option("--sign-rule", sim_flags.sign_rule, "random or positive")
      ->capture_default_str();
  sim_cmd->add_option("--noise-sigma", sim_flags.noise_sigma, "Simulated noise level")
      ->capture_default_str();
  sim_cmd->add_option("--s0-grid", sim_flags.s0_grid, "Model sizes")->capture_default_str();
  sim_cmd->add_option("--replications", sim_flags.replications, "Instances per model size")
      ->capture_default_str();
  sim_cmd->add_flag("--known-sigma", sim_flags.known_sigma,
                    "Calibrate with the simulated noise level");
  sim_cmd->add_flag("--regenerate-design", sim_flags.regenerate_design,
                    "Fresh iid design per instance");
  sim_cmd->add_flag("--full-scale", sim_flags.full_scale,
                    "n=100, p=200, 500 replications");
  add_model_flags(sim_cmd, sim_model);
  add_common_flags(sim_cmd, common);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the theory verification suites");
  verify_cmd->add_option("--suite", verify_flags.suite,
                         "all, theorem1, prop2, prop3 or snsp")
      ->capture_default_str();
  verify_cmd->add_option("--s0", verify_flags.s0, "Support size");
  verify_cmd->add_option("--instances", verify_flags.instances, "Instances per suite");
  verify_cmd->add_option("--design", verify_flags.design, "Design CSV (prop3, snsp)");
  verify_cmd->add_flag("--skip-header", verify_flags.skip_header, "CSV has a header row");
  verify_cmd->add_option("--support", verify_flags.support, "1-based support (snsp)");
  verify_cmd->add_option("--alpha", verify_flags.alpha, "Level (prop3)")->capture_default_str();
  verify_cmd->add_option("--R", verify_flags.R, "Calibration replications (prop3)")
      ->capture_default_str();
  verify_cmd->add_option("--runs", verify_flags.runs, "Simulated responses (prop3)")
      ->capture_default_str();
  add_common_flags(verify_cmd, common);

  CLI::App* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("manifest", replay_manifest, "manifest.json")->required();
  replay_cmd->add_option("--out", replay_out, "Override the output directory");

  std::vector<char*> cargs;
  std::vector<std::string> storage = args;
  for (std::string& s : storage) cargs.push_back(s.data());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*fit_cmd) return cmd_fit(common, fit_model, fit_flags);
    if (*cal_cmd) return cmd_calibrate(common, cal_model, cal_flags);
    if (*sim_cmd) return cmd_simulate(common, sim_model, sim_flags);
    if (*verify_cmd) return cmd_verify(common, verify_flags);
    if (*replay_cmd) return cmd_replay(replay_manifest, replay_out);
  } catch (const Error& e) {
    std::cerr << "lass0: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "lass0: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  return run(std::vector<std::string>(argv, argv + argc));
}
