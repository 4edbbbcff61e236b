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

#ifndef TRAJSAFE__METRICS_HPP_
#define TRAJSAFE__METRICS_HPP_

#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "trajsafe/forecast.hpp"
#include "trajsafe/geometry.hpp"
#include "trajsafe/scene.hpp"

namespace trajsafe
{

/// Catastrophic-failure categories. Each one zeroes the aggregate score.
enum class FailureCause { Collision, OffDrivableArea, DirectionViolation };

std::string_view to_string(FailureCause cause);

struct MetricConfig
{
  double w_ttc{5.0};
  double w_comf{2.0};
  double w_ep{5.0};
  double ttc_projection_horizon{1.0};  // s
  int ttc_substeps{10};                // samples per projection horizon
  double jerk_threshold{10.0};         // m/s^3
  double accel_threshold{6.0};         // m/s^2
  double ddc_heading_tolerance{std::numbers::pi / 4.0};
  double min_turn_heading_change{std::numbers::pi / 6.0};

  void validate() const;
};

struct SafetyScore
{
  double nc{1.0};
  double dac{1.0};
  double ddc{1.0};
  double ttc{1.0};
  double comf{1.0};
  double ep{0.0};
  double pdms{0.0};
  /// Canonical order: Collision, OffDrivableArea, DirectionViolation.
  std::vector<FailureCause> failure_causes;

  bool failed() const noexcept { return !failure_causes.empty(); }
  friend bool operator==(const SafetyScore &, const SafetyScore &) = default;
};

/// Ego footprints at each waypoint. Box t faces along points[t] -> points[t+1];
/// the last box and any box on a stationary segment keep the previous heading,
/// seeded by the start heading.
std::vector<OrientedBox> ego_boxes(const Trajectory & traj, const Extent & ego_extent);

/// 0 when any ego footprint overlaps any agent footprint at the same step.
double no_collision(
  const Trajectory & traj, std::span<const AgentForecast> forecasts, const Extent & ego_extent);

/// 0 when any ego footprint corner leaves the drivable area.
double drivable_area_compliance(
  const Trajectory & traj, const PolygonSet & drivable_area, const Extent & ego_extent);

/// Maneuver realized by the trajectory, from its net heading change.
Command realized_command(const Trajectory & traj, const MetricConfig & cfg);

/// 0 for a maneuver mismatch or more than two consecutive reverse-travel steps,
/// 0.5 for one or two reverse steps, 1 otherwise.
double driving_direction_compliance(
  const Trajectory & traj, const Polyline & route, Command intended, const MetricConfig & cfg);

/// 0 when projecting the ego forward at its step velocity for the configured
/// horizon from any waypoint produces an overlap.
double time_to_collision(
  const Trajectory & traj, std::span<const AgentForecast> forecasts, const Extent & ego_extent,
  const MetricConfig & cfg);

/// 0 when any jerk or acceleration magnitude exceeds its threshold.
double comfort(const Trajectory & traj, const MetricConfig & cfg);

/// Route progress normalized by a kinematic upper bound, in [0, 1].
double ego_progress(const Trajectory & traj, const Polyline & route, const MetricConfig & cfg);

/// Gated weighted aggregate; fills pdms and failure_causes from the submetrics.
void aggregate(SafetyScore & score, const MetricConfig & cfg);

SafetyScore score(
  const Trajectory & traj, const Scene & scene, std::span<const AgentForecast> forecasts,
  const MetricConfig & cfg);

}  // namespace trajsafe

#endif  // TRAJSAFE__METRICS_HPP_
