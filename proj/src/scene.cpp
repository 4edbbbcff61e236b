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

#include "trajsafe/scene.hpp"

#include <cmath>
#include <set>

#include "trajsafe/errors.hpp"

namespace trajsafe
{

std::string_view to_string(Command command)
{
  switch (command) {
    case Command::Left:
      return "left";
    case Command::Straight:
      return "straight";
    case Command::Right:
      return "right";
  }
  return "straight";
}

std::string_view to_string(AgentClass cls)
{
  switch (cls) {
    case AgentClass::Vehicle:
      return "vehicle";
    case AgentClass::Pedestrian:
      return "pedestrian";
    case AgentClass::Static:
      return "static";
  }
  return "vehicle";
}

std::optional<Command> command_from_string(std::string_view text)
{
  if (text == "left") return Command::Left;
  if (text == "straight") return Command::Straight;
  if (text == "right") return Command::Right;
  return std::nullopt;
}

std::optional<AgentClass> agent_class_from_string(std::string_view text)
{
  if (text == "vehicle") return AgentClass::Vehicle;
  if (text == "pedestrian") return AgentClass::Pedestrian;
  if (text == "static") return AgentClass::Static;
  return std::nullopt;
}

namespace
{

bool finite(const Vec2 & p) { return std::isfinite(p.x) && std::isfinite(p.y); }

void check_extent(const Extent & e, const std::string & field)
{
  if (!(e.length > 0.0) || !(e.width > 0.0) || !std::isfinite(e.length) ||
      !std::isfinite(e.width)) {
    throw ValidationError(field, "extent components must be positive");
  }
}

void check_polygon(const Polygon & poly, bool outer)
{
  if (poly.size() < 3) {
    throw ValidationError("drivable_area", "polygon needs at least 3 vertices");
  }
  for (const auto & v : poly) {
    if (!finite(v)) {
      throw ValidationError("drivable_area", "non-finite vertex");
    }
  }
  const double area = signed_area(poly);
  if (area == 0.0) {
    throw ValidationError("drivable_area", "polygon vertices are collinear");
  }
  if (outer && area < 0.0) {
    throw ValidationError("drivable_area", "outer polygon must be counter-clockwise");
  }
  if (!outer && area > 0.0) {
    throw ValidationError("drivable_area", "hole polygon must be clockwise");
  }
}

}  // namespace

void validate_scene(const Scene & scene)
{
  if (scene.id.empty()) {
    throw ValidationError("id", "must be non-empty");
  }
  if (!(scene.dt > 0.0) || !std::isfinite(scene.dt)) {
    throw ValidationError("dt", "must be positive");
  }
  if (scene.horizon_steps < 4) {
    throw ValidationError("horizon_steps", "must be at least 4");
  }
  if (!finite(scene.ego.position) || !std::isfinite(scene.ego.heading)) {
    throw ValidationError("ego", "non-finite pose");
  }
  if (!(scene.ego.speed >= 0.0) || !std::isfinite(scene.ego.speed)) {
    throw ValidationError("ego.speed", "must be non-negative");
  }
  check_extent(scene.ego.extent, "ego.extent");

  std::set<std::string> ids;
  for (const auto & agent : scene.agents) {
    if (!ids.insert(agent.agent_id).second) {
      throw ValidationError("agents", "duplicate agent_id '" + agent.agent_id + "'");
    }
    if (!finite(agent.position) || !finite(agent.velocity) || !std::isfinite(agent.heading)) {
      throw ValidationError("agents", "non-finite state for '" + agent.agent_id + "'");
    }
    check_extent(agent.extent, "agents.extent");
  }

  if (scene.drivable_area.outers.empty()) {
    throw ValidationError("drivable_area", "needs at least one outer polygon");
  }
  for (const auto & outer : scene.drivable_area.outers) {
    check_polygon(outer, true);
  }
  for (const auto & hole : scene.drivable_area.holes) {
    check_polygon(hole, false);
  }

  if (scene.route.size() < 2 || !(scene.route.length() > 0.0)) {
    throw ValidationError("route", "needs at least 2 points and positive length");
  }
  for (const auto & p : scene.route.points()) {
    if (!finite(p)) {
      throw ValidationError("route", "non-finite point");
    }
  }

  for (const auto & [rank, points] : scene.candidates) {
    if (rank < 1) {
      throw ValidationError("candidates", "mode rank must be >= 1");
    }
    if (points.size() != static_cast<std::size_t>(scene.horizon_steps)) {
      throw ValidationError(
        "candidates", "mode " + std::to_string(rank) + " length differs from horizon_steps");
    }
    for (const auto & p : points) {
      if (!finite(p)) {
        throw ValidationError("candidates", "non-finite waypoint");
      }
    }
  }
}

std::optional<Trajectory> scene_mode(const Scene & scene, int rank)
{
  const auto it = scene.candidates.find(rank);
  if (it == scene.candidates.end()) {
    return std::nullopt;
  }
  return Trajectory{it->second, scene.dt, scene.ego};
}

std::vector<Trajectory> scene_modes(const Scene & scene)
{
  // Ranks must be contiguous from 1; a gap ends the ranked list.
  std::vector<Trajectory> modes;
  for (int rank = 1;; ++rank) {
    auto mode = scene_mode(scene, rank);
    if (!mode) {
      break;
    }
    modes.push_back(std::move(*mode));
  }
  return modes;
}

Trajectory constant_speed_trajectory(const Scene & scene)
{
  Trajectory traj{{}, scene.dt, scene.ego};
  const Vec2 dir = unit_from_heading(scene.ego.heading);
  for (int t = 1; t <= scene.horizon_steps; ++t) {
    traj.points.push_back(scene.ego.position + (scene.ego.speed * t * scene.dt) * dir);
  }
  return traj;
}

}  // namespace trajsafe
