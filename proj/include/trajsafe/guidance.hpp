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

#ifndef TRAJSAFE__GUIDANCE_HPP_
#define TRAJSAFE__GUIDANCE_HPP_

#include <span>
#include <vector>

#include "trajsafe/execution.hpp"
#include "trajsafe/forecast.hpp"
#include "trajsafe/metrics.hpp"
#include "trajsafe/scene.hpp"

namespace trajsafe
{

struct PerturbationConfig
{
  std::vector<double> heading_scales{0.95, 1.0, 1.05};
  std::vector<double> speed_scales{0.95, 1.0, 1.05};
  std::vector<double> lateral_offsets_m{-0.5, 0.0, 0.5};
  int use_modes_up_to{3};
  std::vector<double> brake_decels_mps2{3.0, 6.0};

  void validate() const;
};

/// Per-step speeds and heading changes of a trajectory. Step k runs from
/// waypoint k-1 to waypoint k, with the start pose as waypoint -1.
struct MotionProfile
{
  Vec2 start_position;
  double initial_heading{0.0};
  double dt{0.0};
  std::vector<double> speeds;
  std::vector<double> heading_changes;
};

MotionProfile decompose(const Trajectory & traj);
/// Inverse of decompose; `start` supplies the t = 0 state of the result.
Trajectory resynthesize(const MotionProfile & profile, const EgoState & start);

/// Scales heading changes and speeds, resynthesizes from the start pose, then
/// shifts every point `lateral_offset` meters along the left normal of its
/// incoming motion direction. (1, 1, 0) returns `traj` unchanged.
Trajectory perturb(const Trajectory & traj, double heading_scale, double speed_scale, double lateral_offset);

/// Straight-line stop along the start heading with constant deceleration;
/// positions are the exact integral of max(0, v0 - decel * t).
Trajectory brake_profile(const EgoState & start, double decel, int steps, double dt);

struct Provenance
{
  int mode_rank{1};
  double heading_scale{1.0};
  double speed_scale{1.0};
  double lateral_offset{0.0};
  bool is_brake{false};
  double brake_decel{0.0};

  bool is_identity() const noexcept
  {
    return mode_rank == 1 && heading_scale == 1.0 && speed_scale == 1.0 && lateral_offset == 0.0 && !is_brake;
  }
  friend bool operator==(const Provenance &, const Provenance &) = default;
};

struct Candidate
{
  Trajectory trajectory;
  Provenance provenance;
  SafetyScore score;
  double perturbation_magnitude{0.0};
};

/// Mode 1 unperturbed first, then the remaining heading x speed x lateral
/// combinations of mode 1, modes 2..use_modes_up_to, and brake profiles.
/// Candidates within 1e-9 m pointwise of an earlier one are dropped.
/// Brake candidates carry mode_rank 1.
std::vector<Candidate> generate_candidates(
  std::span<const Trajectory> modes, const Scene & scene, const PerturbationConfig & cfg);

/// Scores every candidate in place.
void score_candidates(
  std::span<Candidate> candidates, const Scene & scene, std::span<const AgentForecast> forecasts,
  const MetricConfig & cfg, Execution exec = {});

/// Index of the selected candidate among scored ones. Candidates with pdms 0
/// are rejected; survivors rank by pdms, then smaller perturbation magnitude,
/// lower mode rank, non-brake, generation order. `fallback` is set when every
/// candidate is rejected; the strongest brake (or candidate 0) is returned.
std::size_t select_candidate(std::span<const Candidate> candidates, bool & fallback);

struct GuidanceResult
{
  std::vector<Candidate> all_candidates;
  std::size_t selected_index{0};
  SafetyScore raw_mode1_score;
  bool improved{false};
  bool fallback_used{false};

  const Candidate & selected() const { return all_candidates.at(selected_index); }
};

GuidanceResult guide(
  std::span<const Trajectory> modes, const Scene & scene, const Forecaster & forecaster,
  const MetricConfig & metric_cfg, const PerturbationConfig & perturb_cfg, Execution exec = {});

}  // namespace trajsafe

#endif  // TRAJSAFE__GUIDANCE_HPP_
