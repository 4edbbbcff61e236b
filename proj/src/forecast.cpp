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

#include "trajsafe/forecast.hpp"

#include <algorithm>
#include <cmath>

#include "trajsafe/errors.hpp"

namespace trajsafe
{

namespace
{

AgentForecast empty_forecast(const AgentTrack & agent, int steps)
{
  AgentForecast f;
  f.agent_id = agent.agent_id;
  f.cls = agent.cls;
  f.extent = agent.extent;
  f.positions.reserve(static_cast<std::size_t>(steps));
  f.headings.reserve(static_cast<std::size_t>(steps));
  return f;
}

AgentForecast roll_constant_velocity(const AgentTrack & agent, int steps, double dt)
{
  AgentForecast f = empty_forecast(agent, steps);
  const bool fixed = agent.cls == AgentClass::Static;
  for (int t = 1; t <= steps; ++t) {
    f.positions.push_back(fixed ? agent.position : agent.position + (t * dt) * agent.velocity);
    f.headings.push_back(agent.heading);
  }
  return f;
}

}  // namespace

std::vector<AgentForecast> constant_velocity_forecast(const Scene & scene)
{
  std::vector<AgentForecast> out;
  out.reserve(scene.agents.size());
  for (const auto & agent : scene.agents) {
    out.push_back(roll_constant_velocity(agent, scene.horizon_steps, scene.dt));
  }
  return out;
}

std::vector<AgentForecast> constant_turn_rate_forecast(const Scene & scene, const YawRates & yaw_rates)
{
  for (const auto & [id, rate] : yaw_rates) {
    const bool known = std::any_of(
      scene.agents.begin(), scene.agents.end(), [&](const AgentTrack & a) { return a.agent_id == id; });
    if (!known) {
      throw ValidationError("yaw_rate", "unknown agent_id '" + id + "'");
    }
    if (!std::isfinite(rate)) {
      throw ValidationError("yaw_rate", "non-finite yaw rate for '" + id + "'");
    }
  }

  std::vector<AgentForecast> out;
  out.reserve(scene.agents.size());
  for (const auto & agent : scene.agents) {
    const auto it = yaw_rates.find(agent.agent_id);
    const double omega = it == yaw_rates.end() ? 0.0 : it->second;
    if (omega == 0.0 || agent.cls == AgentClass::Static) {
      out.push_back(roll_constant_velocity(agent, scene.horizon_steps, scene.dt));
      continue;
    }
    AgentForecast f = empty_forecast(agent, scene.horizon_steps);
    const double speed = norm(agent.velocity);
    const double course0 = speed > 0.0 ? std::atan2(agent.velocity.y, agent.velocity.x) : agent.heading;
    const double radius = speed / omega;
    for (int t = 1; t <= scene.horizon_steps; ++t) {
      const double tau = t * scene.dt;
      const double course = course0 + omega * tau;
      const Vec2 offset{
        radius * (std::sin(course) - std::sin(course0)),
        -radius * (std::cos(course) - std::cos(course0))};
      f.positions.push_back(agent.position + offset);
      f.headings.push_back(normalize_angle(agent.heading + omega * tau));
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<AgentForecast> ConstantTurnRateForecaster::forecast(const Scene & scene) const
{
  YawRates applicable;
  for (const auto & agent : scene.agents) {
    const auto it = yaw_rates_.find(agent.agent_id);
    if (it != yaw_rates_.end()) {
      applicable.insert(*it);
    }
  }
  return constant_turn_rate_forecast(scene, applicable);
}

std::unique_ptr<Forecaster> make_forecaster(std::string_view name, const YawRates & yaw_rates)
{
  if (name == "cv") {
    return std::make_unique<ConstantVelocityForecaster>();
  }
  if (name == "ctrv") {
    return std::make_unique<ConstantTurnRateForecaster>(yaw_rates);
  }
  throw ValidationError("forecaster", "unknown forecaster '" + std::string(name) + "'");
}

}  // namespace trajsafe
