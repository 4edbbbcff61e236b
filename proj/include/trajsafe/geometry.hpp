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

#ifndef TRAJSAFE__GEOMETRY_HPP_
#define TRAJSAFE__GEOMETRY_HPP_

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace trajsafe
{

struct Vec2
{
  double x{0.0};
  double y{0.0};

  constexpr Vec2 & operator+=(const Vec2 & o)
  {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2 & operator-=(const Vec2 & o)
  {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, const Vec2 & b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2 & b) { return a -= b; }
  friend constexpr Vec2 operator-(const Vec2 & a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, const Vec2 & a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(const Vec2 & a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator/(const Vec2 & a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;
};

constexpr double dot(const Vec2 & a, const Vec2 & b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2 & a, const Vec2 & b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2 & a) { return std::hypot(a.x, a.y); }
inline Vec2 unit_from_heading(double heading) { return {std::cos(heading), std::sin(heading)}; }
/// Left normal of a heading, i.e. the heading rotated by +90 degrees.
inline Vec2 left_normal(double heading) { return {-std::sin(heading), std::cos(heading)}; }

/// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

/// Vehicle or agent footprint length/width in meters.
struct Extent
{
  double length{0.0};
  double width{0.0};
  friend bool operator==(const Extent &, const Extent &) = default;
};

/// Rectangle with arbitrary orientation. Corners are reported counter-clockwise
/// starting at the front-right corner.
struct OrientedBox
{
  Vec2 center;
  double heading{0.0};
  double half_length{0.0};
  double half_width{0.0};

  static OrientedBox from_extent(const Vec2 & center, double heading, const Extent & extent)
  {
    return {center, heading, 0.5 * extent.length, 0.5 * extent.width};
  }

  std::array<Vec2, 4> corners() const;
};

/// Separating-axis test on the four box axes. Touching boxes overlap.
bool boxes_overlap(const OrientedBox & a, const OrientedBox & b);

using Polygon = std::vector<Vec2>;

/// Signed shoelace area; positive for counter-clockwise vertex order.
double signed_area(std::span<const Vec2> polygon);

/// Polygons-with-holes region. Outers are counter-clockwise, holes clockwise.
struct PolygonSet
{
  std::vector<Polygon> outers;
  std::vector<Polygon> holes;
  friend bool operator==(const PolygonSet &, const PolygonSet &) = default;
};

/// True when `p` lies inside or on the boundary of `polygon` (even-odd rule).
bool point_in_polygon(const Vec2 & p, std::span<const Vec2> polygon);

/// True when `p` is inside some outer and strictly inside no hole.
/// Boundary points of either count as inside the region.
bool point_in_polygon_set(const Vec2 & p, const PolygonSet & region);

struct BoundaryPoint
{
  Vec2 point;
  double distance{0.0};
};

/// Nearest point on any edge of any polygon of the set.
BoundaryPoint closest_boundary_point(const Vec2 & p, const PolygonSet & region);

/// Euclidean distance to the region boundary: positive outside, non-positive inside.
double signed_distance_to_drivable(const Vec2 & p, const PolygonSet & region);

/// Distance from `p` to the closed segment [a, b].
double point_segment_distance(const Vec2 & p, const Vec2 & a, const Vec2 & b);

struct PolylineProjection
{
  double arclength{0.0};
  double lateral_offset{0.0};
  double tangent_heading{0.0};
};

/// Ordered points with cumulative arclength. Consecutive points must differ.
class Polyline
{
public:
  Polyline() = default;
  explicit Polyline(std::vector<Vec2> points);

  const std::vector<Vec2> & points() const noexcept { return points_; }
  const std::vector<double> & arclength() const noexcept { return arclength_; }
  double length() const noexcept { return arclength_.empty() ? 0.0 : arclength_.back(); }
  std::size_t size() const noexcept { return points_.size(); }

  /// Point at arclength `s`, clamped to the ends.
  Vec2 point_at(double s) const;
  /// Heading of the segment containing arclength `s`.
  double heading_at(double s) const;

  friend bool operator==(const Polyline & a, const Polyline & b) { return a.points_ == b.points_; }

private:
  std::vector<Vec2> points_;
  std::vector<double> arclength_;
};

/// Closest point on the polyline. Ties resolve to the smaller arclength. The
/// lateral offset is the signed perpendicular component relative to the
/// tangent of the chosen segment (positive to the left).
PolylineProjection project_to_polyline(const Vec2 & p, const Polyline & line);

}  // namespace trajsafe

#endif  // TRAJSAFE__GEOMETRY_HPP_
