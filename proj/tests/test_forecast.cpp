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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "test_helpers.hpp"
#include "trajsafe/errors.hpp"
#include "trajsafe/forecast.hpp"

namespace trajsafe
{
namespace
{

Scene scene_with(std::vector<AgentTrack> agents, int steps = 4, double dt = 0.5)
{
  Scene s = test::open_road(steps, dt);
  s.agents = std::move(agents);
  return s;
}

AgentTrack agent(std::string id, AgentClass cls, Vec2 pos, Vec2 vel, double heading = 0.0)
{
  return {std::move(id), cls, pos, vel, heading, {4.0, 2.0}};
}

TEST(ConstantVelocity, Example)
{
  const auto f = constant_velocity_forecast(scene_with({agent("a", AgentClass::Vehicle, {0, 0}, {1, 0})}));
  ASSERT_EQ(f.size(), 1u);
  ASSERT_EQ(f[0].positions.size(), 4u);
  const std::vector<Vec2> expected{{0.5, 0}, {1, 0}, {1.5, 0}, {2, 0}};
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_DOUBLE_EQ(f[0].positions[t].x, expected[t].x);
    EXPECT_DOUBLE_EQ(f[0].positions[t].y, expected[t].y);
    EXPECT_DOUBLE_EQ(f[0].headings[t], 0.0);
  }
}

TEST(ConstantVelocity, StaticAgentsStayPut)
{
  const auto f = constant_velocity_forecast(scene_with({agent("s", AgentClass::Static, {3, 4}, {3, 0})}));
  for (const auto & p : f[0].positions) {
    EXPECT_EQ(p, (Vec2{3, 4}));
  }
}

TEST(ConstantVelocity, ZeroVelocityVehicle)
{
  const auto f = constant_velocity_forecast(scene_with({agent("v", AgentClass::Vehicle, {-2, 1}, {0, 0})}));
  for (const auto & p : f[0].positions) {
    EXPECT_EQ(p, (Vec2{-2, 1}));
  }
}

TEST(ConstantVelocity, CoversEveryAgentOnceWithExtent)
{
  auto a = agent("a", AgentClass::Pedestrian, {0, 0}, {0, 1});
  a.extent = {0.6, 0.5};
  const auto f = constant_velocity_forecast(
    scene_with({a, agent("b", AgentClass::Vehicle, {5, 0}, {1, 0}), agent("c", AgentClass::Static, {9, 0}, {})}));
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].agent_id, "a");
  EXPECT_EQ(f[2].agent_id, "c");
  EXPECT_EQ(f[0].extent, (Extent{0.6, 0.5}));
  EXPECT_EQ(f[0].cls, AgentClass::Pedestrian);
}

TEST(ConstantVelocity, RigidMotionEquivariant)
{
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 20; ++i) {
    const double th = ang(rng);
    const Vec2 shift{u(rng), u(rng)};
    const auto rot = [&](Vec2 p) {
      return Vec2{std::cos(th) * p.x - std::sin(th) * p.y, std::sin(th) * p.x + std::cos(th) * p.y};
    };
    const AgentTrack a = agent("a", AgentClass::Vehicle, {u(rng), u(rng)}, {u(rng) / 4, u(rng) / 4}, ang(rng));
    AgentTrack b = a;
    b.position = rot(a.position) + shift;
    b.velocity = rot(a.velocity);
    b.heading = normalize_angle(a.heading + th);
    const auto fa = constant_velocity_forecast(scene_with({a}, 8));
    const auto fb = constant_velocity_forecast(scene_with({b}, 8));
    for (std::size_t t = 0; t < 8; ++t) {
      const Vec2 expected = rot(fa[0].positions[t]) + shift;
      EXPECT_NEAR(fb[0].positions[t].x, expected.x, 1e-9);
      EXPECT_NEAR(fb[0].positions[t].y, expected.y, 1e-9);
      EXPECT_NEAR(normalize_angle(fb[0].headings[t] - fa[0].headings[t] - th), 0.0, 1e-9);
    }
  }
}

TEST(ConstantTurnRate, ZeroYawEqualsConstantVelocity)
{
  const Scene s = scene_with({agent("a", AgentClass::Vehicle, {1, 2}, {3, -1}, -0.3),
                              agent("b", AgentClass::Pedestrian, {0, 0}, {0, 1.2}, 1.5707963)},
                             8);
  const auto cv = constant_velocity_forecast(s);
  for (const auto & ctrv : {constant_turn_rate_forecast(s, {}), constant_turn_rate_forecast(s, {{"a", 0.0}})}) {
    ASSERT_EQ(ctrv.size(), cv.size());
    for (std::size_t i = 0; i < cv.size(); ++i) {
      EXPECT_EQ(ctrv[i].positions, cv[i].positions);
      EXPECT_EQ(ctrv[i].headings, cv[i].headings);
    }
  }
}

TEST(ConstantTurnRate, QuarterCircleClosedForm)
{
  // Speed 1 m/s, yaw rate pi/2 rad/s, dt = 1: after one step the agent sits on
  // a circle of radius 2/pi, a quarter turn from where it started.
  const Scene s = scene_with({agent("a", AgentClass::Vehicle, {0, 0}, {1, 0}, 0.0)}, 4, 1.0);
  const auto f = constant_turn_rate_forecast(s, {{"a", std::numbers::pi / 2.0}});
  const double r = 2.0 / std::numbers::pi;
  EXPECT_NEAR(f[0].positions[0].x, r, 1e-12);
  EXPECT_NEAR(f[0].positions[0].y, r, 1e-12);
  EXPECT_NEAR(f[0].headings[0], std::numbers::pi / 2.0, 1e-12);
  // Center of the circle is (0, r).
  for (const auto & p : f[0].positions) {
    EXPECT_NEAR(std::hypot(p.x, p.y - r), r, 1e-12);
  }
}

TEST(ConstantTurnRate, UnknownAgentIsRejected)
{
  const Scene s = scene_with({agent("a", AgentClass::Vehicle, {0, 0}, {1, 0})});
  EXPECT_THROW(constant_turn_rate_forecast(s, {{"ghost", 0.1}}), ValidationError);
}

TEST(Forecaster, FactoryByName)
{
  EXPECT_EQ(make_forecaster("cv")->name(), "cv");
  EXPECT_EQ(make_forecaster("ctrv")->name(), "ctrv");
  EXPECT_THROW(make_forecaster("lstm"), ValidationError);
  // ctrv ignores yaw rates for agents a given scene does not contain.
  const Scene s = scene_with({agent("a", AgentClass::Vehicle, {0, 0}, {1, 0})});
  const auto f = make_forecaster("ctrv", {{"elsewhere", 0.5}, {"a", 0.2}})->forecast(s);
  EXPECT_NE(f[0].positions, constant_velocity_forecast(s)[0].positions);
}

}  // namespace
}  // namespace trajsafe
