// Copyright 2026 The trajsafe Authors
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

#ifndef TRAJSAFE__CONFIG_HPP_
#define TRAJSAFE__CONFIG_HPP_

#include <filesystem>
#include <string_view>

#include "trajsafe/forecast.hpp"
#include "trajsafe/guidance.hpp"
#include "trajsafe/losses.hpp"
#include "trajsafe/metrics.hpp"

namespace trajsafe
{

struct EngineConfig
{
  MetricConfig metric;
  LossConfig loss;
  PerturbationConfig perturb;
  YawRates yaw_rates;  ///< ctrv forecaster only

  void validate() const;
};

/// TOML-style `key = value` lines. `[section]` headers prefix later keys with
/// `section.`; `#` starts a comment. Values are numbers, bare or quoted
/// strings, or `[a, b, ...]` number lists (a bare comma list also works).
///
///   [metric]   w_ttc w_comf w_ep ttc_projection_horizon ttc_substeps
///              jerk_threshold accel_threshold ddc_heading_tolerance
///              min_turn_heading_change
///   [loss]     lambda_dac lambda_col lambda_comf d_col j_th
///              dac_mode = indicator | surrogate
///   [perturb]  heading_scales speed_scales lateral_offsets_m
///              use_modes_up_to brake_decels_mps2
///   [forecast] yaw_rate.<agent_id>
///
/// Unknown keys and malformed lines raise ParseError with a 1-based line
/// number; out-of-range values raise ValidationError.
EngineConfig parse_config(std::string_view text);

EngineConfig load_config(const std::filesystem::path & path);

}  // namespace trajsafe

#endif  // TRAJSAFE__CONFIG_HPP_
