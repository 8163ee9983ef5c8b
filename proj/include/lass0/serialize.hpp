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

#ifndef LASS0_SERIALIZE_HPP
#define LASS0_SERIALIZE_HPP

#include <string>

#include "json.hpp"
#include "lass0/qut.hpp"

namespace lass0 {

using Json = nlohmann::ordered_json;

// Worker counts are deliberately left out: they never change results.
Json to_json(const LassoZeroConfig& cfg);
LassoZeroConfig config_from_json(const Json& j);

Json to_json(const GevParams& g);
GevParams gev_from_json(const Json& j);

Json to_json(const PivotalCalibration& cal);
PivotalCalibration calibration_from_json(const Json& j);

Json to_json(const LassoZeroFit& fit);

Json to_json(const VectorXd& v);
VectorXd vector_from_json(const Json& j);

// Indices are written 1-based.
Json support_to_json(const SupportSet& s);

ThresholdRule parse_threshold_rule(const std::string& name);
QuantileEstimator parse_quantile_estimator(const std::string& name);
const char* to_string(ThresholdRule rule);
const char* to_string(QuantileEstimator choice);

// Pretty-printed with a trailing newline. Throws kParseError on I/O or
// malformed input.
void write_json(const std::string& path, const Json& j);
Json read_json(const std::string& path);

void save_calibration(const std::string& path, const PivotalCalibration& cal);
PivotalCalibration load_calibration(const std::string& path);

}  // namespace lass0

#endif  // LASS0_SERIALIZE_HPP
