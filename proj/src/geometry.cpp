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

#include "trajsafe/geometry.hpp"

#include <algorithm>
#include <limits>

#include "trajsafe/errors.hpp"

namespace trajsafe
{

double normalize_angle(double angle)
{
  constexpr double pi = std::numbers::pi;
  if (angle > -pi && angle <= pi) {
    return angle;
  }
  double wrapped = std::remainder(angle, 2.0 * pi);
  if (wrapped <= -pi) {
    wrapped += 2.0 * pi;
  }
  return wrapped;
}

std::array<Vec2, 4> OrientedBox::corners() const
{
  const Vec2 u = unit_from_heading(heading) * half_length;
  const Vec2 v = left_normal(heading) * half_width;
  return {center + u - v, center + u + v, center - u + v, center - u - v};
}

namespace
{

double projected_radius(const OrientedBox & box, const Vec2 & axis)
{
  const Vec2 u = unit_from_heading(box.heading);
  const Vec2 v = left_normal(box.heading);
  return box.half_length * std::abs(dot(u, axis)) + box.half_width * std::abs(dot(v, axis));
}

}  // namespace

bool boxes_overlap(const OrientedBox & a, const OrientedBox & b)
{
  const Vec2 d = b.center - a.center;
  const std::array<Vec2, 4> axes{
    unit_from_heading(a.heading), left_normal(a.heading), unit_from_heading(b.heading),
    left_normal(b.heading)};
  for (const auto & axis : axes) {
    if (std::abs(dot(d, axis)) > projected_radius(a, axis) + projected_radius(b, axis)) {
      return false;
    }
  }
  return true;
}

double signed_area(std::span<const Vec2> polygon)
{
  const std::size_t n = polygon.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(polygon[i], polygon[(i + 1) % n]);
  }
  return 0.5 * twice;
}

namespace
{

bool on_segment(const Vec2 & p, const Vec2 & a, const Vec2 & b)
{
  if (cross(b - a, p - a) != 0.0) {
    return false;
  }
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool on_boundary(const Vec2 & p, std::span<const Vec2> polygon)
{
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (on_segment(p, polygon[i], polygon[(i + 1) % n])) {
      return true;
    }
  }
  return false;
}

// Half-open crossing rule: an edge counts when exactly one endpoint is strictly
// above the ray, so vertex hits are classified without an epsilon.
bool crossing_parity(const Vec2 & p, std::span<const Vec2> polygon)
{
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 & a = polygon[i];
    const Vec2 & b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) {
        inside = !inside;
      }
    }
  }
  return inside;
}

}  // namespace

bool point_in_polygon(const Vec2 & p, std::span<const Vec2> polygon)
{
  if (polygon.size() < 3) {
    return false;
  }
  return on_boundary(p, polygon) || crossing_parity(p, polygon);
}

bool point_in_polygon_set(const Vec2 & p, const PolygonSet & region)
{
  const bool in_outer = std::any_of(
    region.outers.begin(), region.outers.end(),
    [&](const Polygon & outer) { return point_in_polygon(p, outer); });
  if (!in_outer) {
    return false;
  }
  for (const auto & hole : region.holes) {
    if (!on_boundary(p, hole) && crossing_parity(p, hole)) {
      return false;
    }
  }
  return true;
}

namespace
{

Vec2 closest_on_segment(const Vec2 & p, const Vec2 & a, const Vec2 & b)
{
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) {
    return a;
  }
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

void scan_edges(
  const Vec2 & p, std::span<const Vec2> polygon, BoundaryPoint & best)
{
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 q = closest_on_segment(p, polygon[i], polygon[(i + 1) % n]);
    const double d = norm(p - q);
    if (d < best.distance) {
      best = {q, d};
    }
  }
}

}  // namespace

double point_segment_distance(const Vec2 & p, const Vec2 & a, const Vec2 & b)
{
  return norm(p - closest_on_segment(p, a, b));
}

BoundaryPoint closest_boundary_point(const Vec2 & p, const PolygonSet & region)
{
  BoundaryPoint best{p, std::numeric_limits<double>::infinity()};
  for (const auto & outer : region.outers) {
    scan_edges(p, outer, best);
  }
  for (const auto & hole : region.holes) {
    scan_edges(p, hole, best);
  }
  return best;
}

double signed_distance_to_drivable(const Vec2 & p, const PolygonSet & region)
{
  const double d = closest_boundary_point(p, region).distance;
  return point_in_polygon_set(p, region) ? -d : d;
}

Polyline::Polyline(std::vector<Vec2> points) : points_(std::move(points))
{
  if (points_.size() < 2) {
    throw ValidationError("polyline", "needs at least 2 points");
  }
  arclength_.reserve(points_.size());
  arclength_.push_back(0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i] == points_[i - 1]) {
      throw ValidationError("polyline", "consecutive points are identical");
    }
    arclength_.push_back(arclength_.back() + norm(points_[i] - points_[i - 1]));
  }
}

namespace
{

std::size_t segment_index(const std::vector<double> & arclength, double s)
{
  // Segment i spans [arclength[i], arclength[i + 1]].
  const auto it = std::upper_bound(arclength.begin(), arclength.end(), s);
  const auto idx = static_cast<std::size_t>(std::distance(arclength.begin(), it));
  return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, arclength.size() - 2);
}

}  // namespace

Vec2 Polyline::point_at(double s) const
{
  s = std::clamp(s, 0.0, length());
  const std::size_t i = segment_index(arclength_, s);
  const double seg = arclength_[i + 1] - arclength_[i];
  const double t = (s - arclength_[i]) / seg;
  return points_[i] + t * (points_[i + 1] - points_[i]);
}

double Polyline::heading_at(double s) const
{
  const std::size_t i = segment_index(arclength_, std::clamp(s, 0.0, length()));
  const Vec2 d = points_[i + 1] - points_[i];
  return std::atan2(d.y, d.x);
}

PolylineProjection project_to_polyline(const Vec2 & p, const Polyline & line)
{
  const auto & pts = line.points();
  const auto & arc = line.arclength();
  double best_dist = std::numeric_limits<double>::infinity();
  PolylineProjection best;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec2 a = pts[i];
    const Vec2 ab = pts[i + 1] - a;
    const double seg_len = arc[i + 1] - arc[i];
    const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
    const Vec2 q = a + t * ab;
    const double d = norm(p - q);
    if (d < best_dist) {
      best_dist = d;
      const Vec2 tangent = ab / seg_len;
      best.arclength = arc[i] + t * seg_len;
      best.lateral_offset = cross(tangent, p - q);
      best.tangent_heading = std::atan2(ab.y, ab.x);
    }
  }
  return best;
}

}  // namespace trajsafe
