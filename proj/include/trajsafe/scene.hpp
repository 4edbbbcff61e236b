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

#ifndef TRAJSAFE__SCENE_HPP_
#define TRAJSAFE__SCENE_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trajsafe/geometry.hpp"

namespace trajsafe
{

enum class Command { Left, Straight, Right };
enum class AgentClass { Vehicle, Pedestrian, Static };

std::string_view to_string(Command command);
std::string_view to_string(AgentClass cls);
std::optional<Command> command_from_string(std::string_view text);
std::optional<AgentClass> agent_class_from_string(std::string_view text);

struct EgoState
{
  Vec2 position;
  double heading{0.0};
  double speed{0.0};
  Extent extent{4.5, 1.9};
  friend bool operator==(const EgoState &, const EgoState &) = default;
};

/// Current-time observation of a surrounding agent. Future positions come
/// from a Forecaster, never from the scene.
struct AgentTrack
{
  std::string agent_id;
  AgentClass cls{AgentClass::Vehicle};
  Vec2 position;
  Vec2 velocity;
  double heading{0.0};
  Extent extent{4.5, 1.9};
  friend bool operator==(const AgentTrack &, const AgentTrack &) = default;
};

inline constexpr double kDefaultDt = 0.5;
inline constexpr int kDefaultHorizonSteps = 8;

struct Scene
{
  std::string id;
  EgoState ego;
  std::vector<AgentTrack> agents;
  PolygonSet drivable_area;
  Polyline route;
  Command intended_command{Command::Straight};
  double dt{kDefaultDt};
  int horizon_steps{kDefaultHorizonSteps};
  /// Planner modes keyed by rank (1 = top-ranked). Each holds horizon_steps
  /// future waypoints; the start pose is `ego`.
  std::map<int, std::vector<Vec2>> candidates;

  friend bool operator==(const Scene &, const Scene &) = default;
};

/// Throws ValidationError naming the first offending field.
void validate_scene(const Scene & scene);

/// Future ego waypoints p_1..p_T sampled every `dt`, anchored at `start` (t = 0).
struct Trajectory
{
  std::vector<Vec2> points;
  double dt{kDefaultDt};
  EgoState start;

  std::size_t size() const noexcept { return points.size(); }
  friend bool operator==(const Trajectory &, const Trajectory &) = default;
};

/// Mode `rank` of the scene as a trajectory; nullopt when absent.
std::optional<Trajectory> scene_mode(const Scene & scene, int rank);

/// Modes 1, 2, ... up to the first missing rank.
std::vector<Trajectory> scene_modes(const Scene & scene);

/// Straight-ahead constant-speed rollout of the ego's current state.
Trajectory constant_speed_trajectory(const Scene & scene);

}  // namespace trajsafe

#endif  // TRAJSAFE__SCENE_HPP_
