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

#include "trajsafe/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trajsafe/errors.hpp"

namespace trajsafe
{

namespace
{

// Displacements shorter than this are treated as standing still.
constexpr double kStationary = 1e-9;

struct Pose
{
  Vec2 position;
  double heading;
};

void check_trajectory(const Trajectory & traj)
{
  if (traj.points.empty()) {
    throw ValidationError("trajectory", "no waypoints");
  }
  if (!(traj.dt > 0.0)) {
    throw ValidationError("trajectory.dt", "must be positive");
  }
}

void check_horizon(const Trajectory & traj, std::span<const AgentForecast> forecasts)
{
  for (const auto & f : forecasts) {
    if (f.positions.size() < traj.size() || f.headings.size() < traj.size()) {
      throw ValidationError(
        "forecasts", "agent '" + f.agent_id + "' horizon " + std::to_string(f.positions.size()) +
                       " shorter than trajectory length " + std::to_string(traj.size()));
    }
  }
}

// Agent pose `time` seconds from now; valid for time >= dt. Linear between
// forecast samples, extrapolated with the last step's motion beyond them.
Pose agent_pose_at(const AgentForecast & f, double time, double dt)
{
  const std::size_t n = f.positions.size();
  const double u = time / dt - 1.0;  // fractional index into positions
  if (n == 1 || u <= 0.0) {
    return {f.positions.front(), f.headings.front()};
  }
  const double max_u = static_cast<double>(n - 1);
  std::size_t i = 0;
  double frac = 0.0;
  if (u >= max_u) {
    i = n - 2;
    frac = u - static_cast<double>(i);
  } else {
    i = static_cast<std::size_t>(std::floor(u));
    frac = u - static_cast<double>(i);
  }
  const Vec2 p = f.positions[i] + frac * (f.positions[i + 1] - f.positions[i]);
  const double dh = normalize_angle(f.headings[i + 1] - f.headings[i]);
  const double h = u >= max_u ? f.headings.back() : f.headings[i] + frac * dh;
  return {p, h};
}

double wrapped_deviation(double a, double b) { return std::abs(normalize_angle(a - b)); }

// Thresholds compare with a 1e-9 slack so a profile sitting exactly on a
// bound (a 6 m/s^2 brake) does not flip on rounding.
bool exceeds(double value, double threshold) { return value > threshold + 1e-9 * std::max(1.0, threshold); }

}  // namespace

std::string_view to_string(FailureCause cause)
{
  switch (cause) {
    case FailureCause::Collision:
      return "Collision";
    case FailureCause::OffDrivableArea:
      return "OffDrivableArea";
    case FailureCause::DirectionViolation:
      return "DirectionViolation";
  }
  return "Collision";
}

void MetricConfig::validate() const
{
  const auto positive = [](double v, const char * name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string("metric.") + name, "must be positive");
    }
  };
  positive(w_ttc, "w_ttc");
  positive(w_comf, "w_comf");
  positive(w_ep, "w_ep");
  positive(ttc_projection_horizon, "ttc_projection_horizon");
  positive(jerk_threshold, "jerk_threshold");
  positive(accel_threshold, "accel_threshold");
  positive(ddc_heading_tolerance, "ddc_heading_tolerance");
  positive(min_turn_heading_change, "min_turn_heading_change");
  if (ttc_substeps < 1) {
    throw ValidationError("metric.ttc_substeps", "must be at least 1");
  }
}

std::vector<OrientedBox> ego_boxes(const Trajectory & traj, const Extent & ego_extent)
{
  const auto & pts = traj.points;
  std::vector<OrientedBox> boxes;
  boxes.reserve(pts.size());
  double heading = traj.start.heading;
  for (std::size_t t = 0; t < pts.size(); ++t) {
    if (t + 1 < pts.size()) {
      const Vec2 d = pts[t + 1] - pts[t];
      if (norm(d) > kStationary) {
        heading = std::atan2(d.y, d.x);
      }
    }
    boxes.push_back(OrientedBox::from_extent(pts[t], heading, ego_extent));
  }
  return boxes;
}

double no_collision(
  const Trajectory & traj, std::span<const AgentForecast> forecasts, const Extent & ego_extent)
{
  check_trajectory(traj);
  check_horizon(traj, forecasts);
  const auto boxes = ego_boxes(traj, ego_extent);
  for (std::size_t t = 0; t < boxes.size(); ++t) {
    for (const auto & f : forecasts) {
      // Static objects gate NC as hard as moving ones.
      const auto agent = OrientedBox::from_extent(f.positions[t], f.headings[t], f.extent);
      if (boxes_overlap(boxes[t], agent)) {
        return 0.0;
      }
    }
  }
  return 1.0;
}

double drivable_area_compliance(
  const Trajectory & traj, const PolygonSet & drivable_area, const Extent & ego_extent)
{
  check_trajectory(traj);
  for (const auto & box : ego_boxes(traj, ego_extent)) {
    for (const auto & corner : box.corners()) {
      if (!point_in_polygon_set(corner, drivable_area)) {
        return 0.0;
      }
    }
  }
  return 1.0;
}

Command realized_command(const Trajectory & traj, const MetricConfig & cfg)
{
  double heading = traj.start.heading;
  double net = 0.0;
  Vec2 prev = traj.start.position;
  for (const auto & p : traj.points) {
    const Vec2 d = p - prev;
    if (norm(d) > kStationary) {
      const double h = std::atan2(d.y, d.x);
      net += normalize_angle(h - heading);
      heading = h;
    }
    prev = p;
  }
  if (net > cfg.min_turn_heading_change) {
    return Command::Left;
  }
  if (net < -cfg.min_turn_heading_change) {
    return Command::Right;
  }
  return Command::Straight;
}

double driving_direction_compliance(
  const Trajectory & traj, const Polyline & route, Command intended, const MetricConfig & cfg)
{
  check_trajectory(traj);
  if (realized_command(traj, cfg) != intended) {
    return 0.0;
  }
  const double reverse_threshold = std::numbers::pi - cfg.ddc_heading_tolerance;
  int run = 0;
  int longest = 0;
  Vec2 prev = traj.start.position;
  for (const auto & p : traj.points) {
    const Vec2 d = p - prev;
    bool reverse = false;
    if (norm(d) > kStationary) {
      const auto proj = project_to_polyline(0.5 * (p + prev), route);
      reverse = wrapped_deviation(std::atan2(d.y, d.x), proj.tangent_heading) > reverse_threshold;
    }
    run = reverse ? run + 1 : 0;
    longest = std::max(longest, run);
    prev = p;
  }
  if (longest > 2) {
    return 0.0;
  }
  return longest > 0 ? 0.5 : 1.0;
}

double time_to_collision(
  const Trajectory & traj, std::span<const AgentForecast> forecasts, const Extent & ego_extent,
  const MetricConfig & cfg)
{
  check_trajectory(traj);
  check_horizon(traj, forecasts);
  if (forecasts.empty()) {
    return 1.0;
  }
  const auto & pts = traj.points;
  const auto boxes = ego_boxes(traj, ego_extent);
  const std::size_t n = pts.size();
  for (std::size_t t = 0; t < n; ++t) {
    Vec2 velocity{};
    if (n >= 2) {
      const std::size_t i = t + 1 < n ? t : n - 2;
      velocity = (pts[i + 1] - pts[i]) / traj.dt;
    }
    const double now = static_cast<double>(t + 1) * traj.dt;
    for (int k = 0; k <= cfg.ttc_substeps; ++k) {
      const double tau = cfg.ttc_projection_horizon * k / cfg.ttc_substeps;
      OrientedBox ego = boxes[t];
      ego.center = pts[t] + tau * velocity;
      for (const auto & f : forecasts) {
        const Pose pose = agent_pose_at(f, now + tau, traj.dt);
        if (boxes_overlap(ego, OrientedBox::from_extent(pose.position, pose.heading, f.extent))) {
          return 0.0;
        }
      }
    }
  }
  return 1.0;
}

double comfort(const Trajectory & traj, const MetricConfig & cfg)
{
  const auto & p = traj.points;
  if (p.size() < 4) {
    throw ValidationError("trajectory", "comfort needs at least 4 waypoints");
  }
  const double dt = traj.dt;
  std::vector<Vec2> v;
  v.reserve(p.size() - 1);
  for (std::size_t t = 0; t + 1 < p.size(); ++t) {
    v.push_back((p[t + 1] - p[t]) / dt);
  }
  for (std::size_t t = 0; t + 1 < v.size(); ++t) {
    if (exceeds(norm((v[t + 1] - v[t]) / dt), cfg.accel_threshold)) {
      return 0.0;
    }
  }
  for (std::size_t t = 0; t + 2 < v.size(); ++t) {
    const Vec2 jerk = (v[t + 2] - 2.0 * v[t + 1] + v[t]) / (dt * dt);
    if (exceeds(norm(jerk), cfg.jerk_threshold)) {
      return 0.0;
    }
  }
  return 1.0;
}

double ego_progress(const Trajectory & traj, const Polyline & route, const MetricConfig & cfg)
{
  check_trajectory(traj);
  const double s_start = project_to_polyline(traj.start.position, route).arclength;
  const double s_end = project_to_polyline(traj.points.back(), route).arclength;
  const double progress = std::max(0.0, s_end - s_start);
  const double horizon = static_cast<double>(traj.size()) * traj.dt;
  const double reachable = traj.start.speed * horizon + 0.5 * cfg.accel_threshold * horizon * horizon;
  const double denom = std::min(route.length() - s_start, reachable);
  if (denom <= kStationary) {
    return 1.0;  // nothing left to progress along
  }
  return std::clamp(progress / denom, 0.0, 1.0);
}

void aggregate(SafetyScore & s, const MetricConfig & cfg)
{
  const double weighted =
    (cfg.w_ttc * s.ttc + cfg.w_comf * s.comf + cfg.w_ep * s.ep) / (cfg.w_ttc + cfg.w_comf + cfg.w_ep);
  s.pdms = s.nc * s.dac * s.ddc * weighted;
  s.failure_causes.clear();
  if (s.nc == 0.0) s.failure_causes.push_back(FailureCause::Collision);
  if (s.dac == 0.0) s.failure_causes.push_back(FailureCause::OffDrivableArea);
  if (s.ddc == 0.0) s.failure_causes.push_back(FailureCause::DirectionViolation);
  // With all gates open pdms is still 0 when ttc = comf = ep = 0. That case is
  // not a catastrophic failure and carries no cause.
}

SafetyScore score(
  const Trajectory & traj, const Scene & scene, std::span<const AgentForecast> forecasts,
  const MetricConfig & cfg)
{
  if (traj.size() != static_cast<std::size_t>(scene.horizon_steps)) {
    throw ValidationError("trajectory", "length differs from scene horizon_steps");
  }
  if (std::abs(traj.dt - scene.dt) > 1e-12 * scene.dt) {
    throw ValidationError("trajectory.dt", "differs from scene dt");
  }
  SafetyScore s;
  const Extent & extent = scene.ego.extent;
  s.nc = no_collision(traj, forecasts, extent);
  s.dac = drivable_area_compliance(traj, scene.drivable_area, extent);
  s.ddc = driving_direction_compliance(traj, scene.route, scene.intended_command, cfg);
  s.ttc = time_to_collision(traj, forecasts, extent, cfg);
  s.comf = comfort(traj, cfg);
  s.ep = ego_progress(traj, scene.route, cfg);
  aggregate(s, cfg);
  return s;
}

}  // namespace trajsafe
