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

#include "trajsafe/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "trajsafe/scene_io.hpp"

namespace trajsafe
{

namespace
{

constexpr double kRoadRight = -1.75;
constexpr double kRoadLeft = 5.25;
constexpr double kRoadBegin = -20.0;
constexpr double kRoadEnd = 150.0;

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// std::uniform_real_distribution is implementation-defined; this is not.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi)
  {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }
  template <typename T, std::size_t N>
  T pick(const std::array<T, N> & items)
  {
    const auto i = static_cast<std::size_t>(uniform(0.0, static_cast<double>(N)));
    return items[std::min(i, N - 1)];
  }

private:
  std::mt19937_64 engine_;
};

Polygon rect_ccw(double x0, double y0, double x1, double y1)
{
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

Polygon rect_cw(double x0, double y0, double x1, double y1)
{
  return {{x0, y0}, {x0, y1}, {x1, y1}, {x1, y0}};
}

std::vector<Vec2> straight_points(double speed, double y, int steps, double dt)
{
  std::vector<Vec2> pts;
  for (int t = 1; t <= steps; ++t) {
    pts.push_back({speed * t * dt, y});
  }
  return pts;
}

// Quadratic drift to `lateral_end` at the last step.
std::vector<Vec2> drift_points(double speed, double lateral_end, int steps, double dt)
{
  std::vector<Vec2> pts;
  for (int t = 1; t <= steps; ++t) {
    const double r = static_cast<double>(t) / steps;
    pts.push_back({speed * t * dt, lateral_end * r * r});
  }
  return pts;
}

// Straight to x = a, quarter circle of radius r to the left, then north.
Vec2 left_turn_point(double s, double a, double r)
{
  const double arc = r * std::numbers::pi / 2.0;
  if (s <= a) {
    return {s, 0.0};
  }
  if (s <= a + arc) {
    const double phi = (s - a) / r;
    return {a + r * std::sin(phi), r - r * std::cos(phi)};
  }
  return {a + r, r + (s - a - arc)};
}

std::vector<Vec2> left_turn_points(double speed, double a, double r, int steps, double dt)
{
  std::vector<Vec2> pts;
  for (int t = 1; t <= steps; ++t) {
    pts.push_back(left_turn_point(speed * t * dt, a, r));
  }
  return pts;
}

Extent vehicle_extent(Rng & rng)
{
  return {rng.uniform(4.2, 4.8), rng.uniform(1.8, 1.95)};
}

AgentTrack vehicle(std::string id, Vec2 position, double heading, double speed, Extent extent)
{
  return {std::move(id), AgentClass::Vehicle, position, speed * unit_from_heading(heading), heading, extent};
}

Polyline straight_route() { return Polyline({{kRoadBegin, 0.0}, {kRoadEnd, 0.0}}); }

void base_scene(Scene & scene, Rng & rng, double speed)
{
  scene.ego.position = {0.0, 0.0};
  scene.ego.heading = 0.0;
  scene.ego.speed = speed;
  scene.ego.extent = {rng.uniform(4.4, 4.9), rng.uniform(1.8, 1.95)};
  scene.dt = kDefaultDt;
  scene.horizon_steps = kDefaultHorizonSteps;
  scene.intended_command = Command::Straight;
}

void set_modes(Scene & scene, std::vector<Vec2> m1, std::vector<Vec2> m2, std::vector<Vec2> m3)
{
  scene.candidates[1] = std::move(m1);
  scene.candidates[2] = std::move(m2);
  scene.candidates[3] = std::move(m3);
}

GeneratedScene make_straight(Rng & rng)
{
  GeneratedScene out;
  Scene & s = out.scene;
  const double v = rng.uniform(8.0, 12.0);
  base_scene(s, rng, v);
  const int T = s.horizon_steps;
  s.drivable_area.outers.push_back(rect_ccw(kRoadBegin, kRoadRight, kRoadEnd, kRoadLeft));
  s.drivable_area.holes.push_back(rect_cw(70.0, 3.0, 76.0, 4.0));
  s.route = straight_route();
  s.agents.push_back(vehicle("veh-lead", {rng.uniform(25.0, 35.0), 0.0}, 0.0, v * rng.uniform(0.97, 1.03),
                             vehicle_extent(rng)));
  if (rng.chance(0.5)) {
    s.agents.push_back(vehicle("veh-oncoming", {rng.uniform(70.0, 100.0), 3.5}, std::numbers::pi,
                               rng.uniform(7.0, 10.0), vehicle_extent(rng)));
  }
  set_modes(s, straight_points(v, 0.0, T, s.dt), straight_points(0.9 * v, 0.0, T, s.dt),
            drift_points(v, 1.0, T, s.dt));
  return out;
}

GeneratedScene make_left_turn(Rng & rng, const GeneratorOptions & options)
{
  GeneratedScene out;
  Scene & s = out.scene;
  const double v = rng.uniform(5.5, 7.0);
  base_scene(s, rng, v);
  const int T = s.horizon_steps;
  const double a = v * 1.0;
  const double r = rng.uniform(8.0, 10.0);
  const double x = a + r;
  s.intended_command = Command::Left;
  s.drivable_area.outers.push_back({{kRoadBegin, -3.0},
                                    {x + 4.0, -3.0},
                                    {x + 4.0, 80.0},
                                    {x - 4.0, 80.0},
                                    {x - 4.0, 7.0},
                                    {x - 7.0, 4.0},
                                    {kRoadBegin, 4.0}});
  std::vector<Vec2> route{{kRoadBegin, 0.0}, {a, 0.0}};
  constexpr int kArcSegments = 12;
  for (int k = 1; k <= kArcSegments; ++k) {
    const double phi = (std::numbers::pi / 2.0) * k / kArcSegments;
    route.push_back({a + r * std::sin(phi), r - r * std::cos(phi)});
  }
  route.push_back({x, 80.0});
  s.route = Polyline(std::move(route));
  s.agents.push_back(vehicle("veh-follow", {rng.uniform(-18.0, -14.0), 0.0}, 0.0, 0.9 * v, vehicle_extent(rng)));

  auto turn = left_turn_points(v, a, r, T, s.dt);
  auto slow_turn = left_turn_points(0.9 * v, a, r, T, s.dt);
  auto straight = straight_points(v, 0.0, T, s.dt);
  if (rng.chance(options.left_turn_straight_fraction)) {
    out.injected_failure = true;
    set_modes(s, std::move(straight), std::move(turn), std::move(slow_turn));
  } else {
    set_modes(s, std::move(turn), std::move(slow_turn), std::move(straight));
  }
  return out;
}

GeneratedScene make_pedestrian_crossing(Rng & rng, const GeneratorOptions & options)
{
  GeneratedScene out;
  Scene & s = out.scene;
  const double v = rng.uniform(7.0, 10.0);
  base_scene(s, rng, v);
  const int T = s.horizon_steps;
  s.drivable_area.outers.push_back(rect_ccw(kRoadBegin, kRoadRight, kRoadEnd, kRoadLeft));
  s.route = straight_route();

  out.injected_failure = true;
  out.recoverable_by_perturbation = rng.chance(options.recoverable_fraction);
  // The pedestrian reaches the ego's straight-line position exactly at t_c, a
  // sample time. Arrivals at 0.5 s leave no room to stop.
  const double t_c =
    out.recoverable_by_perturbation ? rng.pick(std::array<double, 3>{1.5, 2.0, 2.5}) : 0.5;
  const double w = rng.uniform(1.2, 1.6);
  s.agents.push_back(
    {"ped-1", AgentClass::Pedestrian, {v * t_c, -w * t_c}, {0.0, w}, std::numbers::pi / 2.0, {0.5, 0.5}});
  if (rng.chance(0.5)) {
    s.agents.push_back(vehicle("veh-oncoming", {rng.uniform(80.0, 110.0), 3.5}, std::numbers::pi,
                               rng.uniform(7.0, 10.0), vehicle_extent(rng)));
  }
  set_modes(s, straight_points(v, 0.0, T, s.dt), straight_points(0.9 * v, 0.0, T, s.dt),
            drift_points(v, 1.0, T, s.dt));
  return out;
}

GeneratedScene make_oncoming(Rng & rng, const GeneratorOptions & options)
{
  GeneratedScene out;
  Scene & s = out.scene;
  const double v = rng.uniform(8.0, 11.0);
  base_scene(s, rng, v);
  const int T = s.horizon_steps;
  s.drivable_area.outers.push_back(rect_ccw(kRoadBegin, kRoadRight, kRoadEnd, kRoadLeft));
  s.route = straight_route();

  out.injected_failure = true;
  out.recoverable_by_perturbation = rng.chance(options.recoverable_fraction);
  const double u = rng.uniform(6.0, 8.0);
  const Extent ext = vehicle_extent(rng);
  // Lateral overlap with the ego is `intrusion`; a 0.5 m shift clears it
  // only when intrusion < 0.5.
  const double half_sum = 0.5 * (s.ego.extent.width + ext.width);
  const double intrusion =
    out.recoverable_by_perturbation ? rng.uniform(0.15, 0.35) : rng.uniform(0.65, 0.85);
  const double t_c =
    out.recoverable_by_perturbation ? rng.pick(std::array<double, 3>{1.0, 1.5, 2.0}) : 1.0;
  s.agents.push_back(vehicle("veh-oncoming", {(v + u) * t_c, half_sum - intrusion}, std::numbers::pi, u, ext));
  set_modes(s, straight_points(v, 0.0, T, s.dt), straight_points(0.9 * v, 0.0, T, s.dt),
            drift_points(v, 1.0, T, s.dt));
  return out;
}

GeneratedScene make_narrow_corridor(Rng & rng, const GeneratorOptions & options)
{
  GeneratedScene out;
  Scene & s = out.scene;
  const double v = rng.uniform(6.0, 9.0);
  base_scene(s, rng, v);
  const int T = s.horizon_steps;

  out.injected_failure = true;
  out.recoverable_by_perturbation = rng.chance(options.recoverable_fraction);
  const double half_ego = 0.5 * s.ego.extent.width;
  double center = 0.0;
  double margin = 0.0;
  double entry = 0.0;
  if (out.recoverable_by_perturbation) {
    center = -0.5;
    margin = rng.uniform(0.15, 0.3);
    entry = rng.uniform(6.0, 14.0);
  } else {
    // Offset too far for a 0.5 m shift, entered before any brake can stop.
    center = -1.0;
    margin = rng.uniform(0.03, 0.1);
    entry = rng.uniform(2.6, 3.2);
  }
  const double lo = center - half_ego - margin;
  const double hi = center + half_ego + margin;
  s.drivable_area.outers.push_back({{kRoadBegin, -2.5},
                                    {entry, -2.5},
                                    {entry, lo},
                                    {kRoadEnd, lo},
                                    {kRoadEnd, hi},
                                    {entry, hi},
                                    {entry, 2.5},
                                    {kRoadBegin, 2.5}});
  s.route = straight_route();
  set_modes(s, straight_points(v, 0.0, T, s.dt), straight_points(0.9 * v, 0.0, T, s.dt),
            drift_points(v, 1.0, T, s.dt));
  return out;
}

Vec2 canonical(const Vec2 & p) { return {canonical_double(p.x), canonical_double(p.y)}; }

void canonicalize(Scene & s)
{
  s.ego.position = canonical(s.ego.position);
  s.ego.heading = canonical_double(s.ego.heading);
  s.ego.speed = canonical_double(s.ego.speed);
  s.ego.extent = {canonical_double(s.ego.extent.length), canonical_double(s.ego.extent.width)};
  for (auto & a : s.agents) {
    a.position = canonical(a.position);
    a.velocity = canonical(a.velocity);
    a.heading = canonical_double(a.heading);
    a.extent = {canonical_double(a.extent.length), canonical_double(a.extent.width)};
  }
  for (auto * polys : {&s.drivable_area.outers, &s.drivable_area.holes}) {
    for (auto & poly : *polys) {
      for (auto & p : poly) {
        p = canonical(p);
      }
    }
  }
  std::vector<Vec2> route = s.route.points();
  for (auto & p : route) {
    p = canonical(p);
  }
  s.route = Polyline(std::move(route));
  for (auto & [rank, pts] : s.candidates) {
    for (auto & p : pts) {
      p = canonical(p);
    }
  }
  s.dt = canonical_double(s.dt);
}

std::uint64_t template_salt(SceneTemplate tmpl)
{
  return 0x5DEECE66Dull * (static_cast<std::uint64_t>(tmpl) + 1);
}

}  // namespace

std::string_view to_string(SceneTemplate tmpl)
{
  switch (tmpl) {
    case SceneTemplate::Straight:
      return "straight";
    case SceneTemplate::LeftTurn:
      return "left_turn";
    case SceneTemplate::PedestrianCrossing:
      return "pedestrian_crossing";
    case SceneTemplate::Oncoming:
      return "oncoming";
    case SceneTemplate::NarrowCorridor:
      return "narrow_corridor";
  }
  return "unknown";
}

std::optional<SceneTemplate> template_from_string(std::string_view text)
{
  for (auto tmpl : kAllTemplates) {
    if (to_string(tmpl) == text) {
      return tmpl;
    }
  }
  return std::nullopt;
}

GeneratedScene generate_scene_detailed(std::uint64_t seed, SceneTemplate tmpl, const GeneratorOptions & options)
{
  Rng rng(splitmix64(seed ^ template_salt(tmpl)));
  GeneratedScene out;
  switch (tmpl) {
    case SceneTemplate::Straight:
      out = make_straight(rng);
      break;
    case SceneTemplate::LeftTurn:
      out = make_left_turn(rng, options);
      break;
    case SceneTemplate::PedestrianCrossing:
      out = make_pedestrian_crossing(rng, options);
      break;
    case SceneTemplate::Oncoming:
      out = make_oncoming(rng, options);
      break;
    case SceneTemplate::NarrowCorridor:
      out = make_narrow_corridor(rng, options);
      break;
  }
  out.scene.id = std::string(to_string(tmpl)) + "-" + std::to_string(seed);
  canonicalize(out.scene);
  validate_scene(out.scene);
  return out;
}

Scene generate_scene(std::uint64_t seed, SceneTemplate tmpl, const GeneratorOptions & options)
{
  return generate_scene_detailed(seed, tmpl, options).scene;
}

std::vector<GeneratedScene> generate_corpus(
  std::uint64_t seed, const TemplateCounts & counts, const GeneratorOptions & options)
{
  std::vector<GeneratedScene> corpus;
  for (std::size_t k = 0; k < kAllTemplates.size(); ++k) {
    const SceneTemplate tmpl = kAllTemplates[k];
    for (int i = 0; i < counts[k]; ++i) {
      const std::uint64_t scene_seed = splitmix64(seed * 1000003ull + k * 7919ull + static_cast<std::uint64_t>(i));
      GeneratedScene g = generate_scene_detailed(scene_seed, tmpl, options);
      char id[64];
      std::snprintf(id, sizeof(id), "%s-%04d", std::string(to_string(tmpl)).c_str(), i);
      g.scene.id = id;
      corpus.push_back(std::move(g));
    }
  }
  std::sort(corpus.begin(), corpus.end(),
            [](const GeneratedScene & a, const GeneratedScene & b) { return a.scene.id < b.scene.id; });
  return corpus;
}

}  // namespace trajsafe
