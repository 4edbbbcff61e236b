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

#include "trajsafe/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "trajsafe/errors.hpp"

namespace trajsafe
{

namespace
{

constexpr double kStationary = 1e-9;
constexpr double kDuplicateTolerance = 1e-9;

bool contains(const std::vector<double> & values, double v)
{
  return std::find(values.begin(), values.end(), v) != values.end();
}

void check_unique(const std::vector<double> & values, const char * field)
{
  if (std::set<double>(values.begin(), values.end()).size() != values.size()) {
    throw ValidationError(field, "values must be distinct");
  }
}

bool same_points(const Trajectory & a, const Trajectory & b)
{
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a.points[i].x - b.points[i].x) > kDuplicateTolerance ||
        std::abs(a.points[i].y - b.points[i].y) > kDuplicateTolerance) {
      return false;
    }
  }
  return true;
}

double magnitude(const Provenance & p)
{
  const double m = std::abs(p.heading_scale - 1.0) + std::abs(p.speed_scale - 1.0) +
                   std::abs(p.lateral_offset) / 1.0 + (p.is_brake ? 1.0 : 0.0);
  // Snap to a 1e-9 grid so 0.95 and 1.05 tie.
  return std::round(m * 1e9) / 1e9;
}

}  // namespace

void PerturbationConfig::validate() const
{
  if (!contains(heading_scales, 1.0)) {
    throw ValidationError("perturb.heading_scales", "must contain 1.0");
  }
  if (!contains(speed_scales, 1.0)) {
    throw ValidationError("perturb.speed_scales", "must contain 1.0");
  }
  if (!contains(lateral_offsets_m, 0.0)) {
    throw ValidationError("perturb.lateral_offsets_m", "must contain 0.0");
  }
  for (double s : heading_scales) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw ValidationError("perturb.heading_scales", "scales must be positive");
    }
  }
  for (double s : speed_scales) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw ValidationError("perturb.speed_scales", "scales must be positive");
    }
  }
  for (double o : lateral_offsets_m) {
    if (!(std::abs(o) < 1.0)) {
      throw ValidationError("perturb.lateral_offsets_m", "offsets must be sub-meter");
    }
  }
  for (double d : brake_decels_mps2) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw ValidationError("perturb.brake_decels_mps2", "decelerations must be positive");
    }
  }
  check_unique(heading_scales, "perturb.heading_scales");
  check_unique(speed_scales, "perturb.speed_scales");
  check_unique(lateral_offsets_m, "perturb.lateral_offsets_m");
  check_unique(brake_decels_mps2, "perturb.brake_decels_mps2");
  if (use_modes_up_to < 1) {
    throw ValidationError("perturb.use_modes_up_to", "must be at least 1");
  }
}

MotionProfile decompose(const Trajectory & traj)
{
  MotionProfile profile;
  profile.start_position = traj.start.position;
  profile.initial_heading = traj.start.heading;
  profile.dt = traj.dt;
  profile.speeds.reserve(traj.size());
  profile.heading_changes.reserve(traj.size());
  double heading = traj.start.heading;
  Vec2 prev = traj.start.position;
  for (const auto & p : traj.points) {
    const Vec2 d = p - prev;
    const double len = norm(d);
    if (len == 0.0) {
      profile.speeds.push_back(0.0);
      profile.heading_changes.push_back(0.0);
    } else {
      const double h = std::atan2(d.y, d.x);
      profile.speeds.push_back(len / traj.dt);
      profile.heading_changes.push_back(normalize_angle(h - heading));
      heading = h;
    }
    prev = p;
  }
  return profile;
}

Trajectory resynthesize(const MotionProfile & profile, const EgoState & start)
{
  Trajectory traj{{}, profile.dt, start};
  traj.points.reserve(profile.speeds.size());
  double heading = profile.initial_heading;
  Vec2 q = profile.start_position;
  for (std::size_t k = 0; k < profile.speeds.size(); ++k) {
    heading += profile.heading_changes[k];
    q += (profile.speeds[k] * profile.dt) * unit_from_heading(heading);
    traj.points.push_back(q);
  }
  return traj;
}

Trajectory perturb(const Trajectory & traj, double heading_scale, double speed_scale, double lateral_offset)
{
  if (!(heading_scale > 0.0) || !(speed_scale > 0.0)) {
    throw ValidationError("perturb", "scales must be positive");
  }
  Trajectory out = traj;
  if (heading_scale != 1.0 || speed_scale != 1.0) {
    MotionProfile profile = decompose(traj);
    for (auto & c : profile.heading_changes) {
      c *= heading_scale;
    }
    for (auto & s : profile.speeds) {
      s *= speed_scale;
    }
    out = resynthesize(profile, traj.start);
  }
  if (lateral_offset != 0.0) {
    double heading = out.start.heading;
    Vec2 prev = out.start.position;
    for (auto & p : out.points) {
      const Vec2 d = p - prev;
      if (norm(d) > kStationary) {
        heading = std::atan2(d.y, d.x);
      }
      prev = p;
      p += lateral_offset * left_normal(heading);
    }
  }
  return out;
}

Trajectory brake_profile(const EgoState & start, double decel, int steps, double dt)
{
  if (!(decel > 0.0)) {
    throw ValidationError("brake_decel", "must be positive");
  }
  Trajectory traj{{}, dt, start};
  const Vec2 dir = unit_from_heading(start.heading);
  const double v0 = start.speed;
  const double stop_time = v0 / decel;
  for (int t = 1; t <= steps; ++t) {
    const double tau = std::min(t * dt, stop_time);
    const double s = v0 * tau - 0.5 * decel * tau * tau;
    traj.points.push_back(start.position + s * dir);
  }
  return traj;
}

std::vector<Candidate> generate_candidates(
  std::span<const Trajectory> modes, const Scene & /*scene*/, const PerturbationConfig & cfg)
{
  cfg.validate();
  if (modes.empty()) {
    throw ValidationError("modes", "at least one planner mode is required");
  }
  const Trajectory & top = modes.front();

  std::vector<Candidate> raw;
  const auto push = [&raw](Trajectory traj, const Provenance & prov) {
    raw.push_back(Candidate{std::move(traj), prov, {}, magnitude(prov)});
  };

  push(top, Provenance{});
  for (double h : cfg.heading_scales) {
    for (double s : cfg.speed_scales) {
      for (double lat : cfg.lateral_offsets_m) {
        if (h == 1.0 && s == 1.0 && lat == 0.0) {
          continue;
        }
        push(perturb(top, h, s, lat), Provenance{1, h, s, lat, false, 0.0});
      }
    }
  }
  const std::size_t mode_limit = std::min(modes.size(), static_cast<std::size_t>(cfg.use_modes_up_to));
  for (std::size_t m = 1; m < mode_limit; ++m) {
    Provenance prov;
    prov.mode_rank = static_cast<int>(m + 1);
    push(modes[m], prov);
  }
  for (double decel : cfg.brake_decels_mps2) {
    push(brake_profile(top.start, decel, static_cast<int>(top.size()), top.dt),
         Provenance{1, 1.0, 1.0, 0.0, true, decel});
  }

  std::vector<Candidate> unique;
  unique.reserve(raw.size());
  for (auto & c : raw) {
    const bool duplicate = std::any_of(unique.begin(), unique.end(), [&](const Candidate & kept) {
      return same_points(kept.trajectory, c.trajectory);
    });
    if (!duplicate) {
      unique.push_back(std::move(c));
    }
  }
  return unique;
}

void score_candidates(
  std::span<Candidate> candidates, const Scene & scene, std::span<const AgentForecast> forecasts,
  const MetricConfig & cfg, Execution exec)
{
  parallel_for(candidates.size(), exec, [&](std::size_t i) {
    candidates[i].score = score(candidates[i].trajectory, scene, forecasts, cfg);
  });
}

std::size_t select_candidate(std::span<const Candidate> candidates, bool & fallback)
{
  fallback = false;
  std::optional<std::size_t> best;
  const auto better = [&](std::size_t a, std::size_t b) {
    const Candidate & x = candidates[a];
    const Candidate & y = candidates[b];
    if (x.score.pdms != y.score.pdms) return x.score.pdms > y.score.pdms;
    if (x.perturbation_magnitude != y.perturbation_magnitude) {
      return x.perturbation_magnitude < y.perturbation_magnitude;
    }
    if (x.provenance.mode_rank != y.provenance.mode_rank) {
      return x.provenance.mode_rank < y.provenance.mode_rank;
    }
    if (x.provenance.is_brake != y.provenance.is_brake) return !x.provenance.is_brake;
    return a < b;
  };
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].score.pdms > 0.0 && (!best || better(i, *best))) {
      best = i;
    }
  }
  if (best) {
    return *best;
  }

  fallback = true;
  std::optional<std::size_t> strongest;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto & p = candidates[i].provenance;
    if (p.is_brake && (!strongest || p.brake_decel > candidates[*strongest].provenance.brake_decel)) {
      strongest = i;
    }
  }
  return strongest.value_or(0);
}

GuidanceResult guide(
  std::span<const Trajectory> modes, const Scene & scene, const Forecaster & forecaster,
  const MetricConfig & metric_cfg, const PerturbationConfig & perturb_cfg, Execution exec)
{
  GuidanceResult result;
  result.all_candidates = generate_candidates(modes, scene, perturb_cfg);
  const auto forecasts = forecaster.forecast(scene);
  score_candidates(result.all_candidates, scene, forecasts, metric_cfg, exec);
  // generate_candidates always places the unperturbed top mode first.
  result.raw_mode1_score = result.all_candidates.front().score;
  result.selected_index = select_candidate(result.all_candidates, result.fallback_used);
  result.improved = result.selected().score.pdms > result.raw_mode1_score.pdms;
  return result;
}

}  // namespace trajsafe
