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

#ifndef TRAJSAFE__FORECAST_HPP_
#define TRAJSAFE__FORECAST_HPP_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "trajsafe/scene.hpp"

namespace trajsafe
{

/// Future poses of one agent at t = 1..T (index 0 is time dt).
struct AgentForecast
{
  std::string agent_id;
  AgentClass cls{AgentClass::Vehicle};
  std::vector<Vec2> positions;
  std::vector<double> headings;
  Extent extent;
};

using YawRates = std::map<std::string, double>;

/// Constant-velocity rollout. Static agents stay where they are.
std::vector<AgentForecast> constant_velocity_forecast(const Scene & scene);

/// Unicycle rollout at speed |velocity| with a per-agent yaw rate (rad/s,
/// default 0). A zero yaw rate reproduces constant_velocity_forecast exactly.
/// Throws ValidationError for ids not present in the scene.
std::vector<AgentForecast> constant_turn_rate_forecast(const Scene & scene, const YawRates & yaw_rates);

/// Pluggable agent-motion predictor.
class Forecaster
{
public:
  virtual ~Forecaster() = default;
  virtual std::string_view name() const = 0;
  virtual std::vector<AgentForecast> forecast(const Scene & scene) const = 0;
};

class ConstantVelocityForecaster final : public Forecaster
{
public:
  std::string_view name() const override { return "cv"; }
  std::vector<AgentForecast> forecast(const Scene & scene) const override
  {
    return constant_velocity_forecast(scene);
  }
};

class ConstantTurnRateForecaster final : public Forecaster
{
public:
  explicit ConstantTurnRateForecaster(YawRates yaw_rates = {}) : yaw_rates_(std::move(yaw_rates)) {}
  std::string_view name() const override { return "ctrv"; }
  std::vector<AgentForecast> forecast(const Scene & scene) const override;

private:
  YawRates yaw_rates_;
};

/// "cv" or "ctrv"; throws ValidationError otherwise. Yaw rates only apply to
/// ctrv, and ids missing from a given scene are ignored there.
std::unique_ptr<Forecaster> make_forecaster(std::string_view name, const YawRates & yaw_rates = {});

}  // namespace trajsafe

#endif  // TRAJSAFE__FORECAST_HPP_
