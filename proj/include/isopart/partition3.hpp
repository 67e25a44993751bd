#ifndef ISOPART_PARTITION3_HPP_
#define ISOPART_PARTITION3_HPP_

/*!
 * \file
 * \brief Reduced description of an SO(4)×SO(4)-symmetric 3-partition of R^8.
 *
 * Region 1 is the bounded region containing the origin, region 2 lies above
 * the diagonal (|x⃗| <= |y⃗|) and region 3 below it. Interfaces:
 *   - gamma13 from the x-axis to the junction, region 1 on its left;
 *   - gamma12 from the y-axis to the junction, region 1 on its right;
 *   - gamma23 along the diagonal from the junction out to the truncation
 *     radius, region 2 on its left. It stands for an unbounded ray.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "isopart/errors.hpp"
#include "isopart/reduced_plane.hpp"

namespace isopart {

/// Regions on the left and right of an interface, in its direction.
struct InterfaceSides {
  int left = 0;
  int right = 0;
  friend bool operator==(const InterfaceSides&, const InterfaceSides&) = default;
};

struct ReducedPartition3 {
  ReducedCurve gamma12;
  ReducedCurve gamma13;
  ReducedCurve gamma23;
  Point junction{};
  double truncation_radius = 0.0;
  bool symmetric = true;
  InterfaceSides sides12{2, 1};
  InterfaceSides sides13{1, 3};
  InterfaceSides sides23{2, 3};

  [[nodiscard]] std::array<const ReducedCurve*, 3> interfaces() const {
    return {&gamma12, &gamma13, &gamma23};
  }

  [[nodiscard]] bool has_bounded_region() const {
    return !gamma12.empty() || !gamma13.empty();
  }

  /// Smallest R with region 1 inside the reduced ball of radius R.
  [[nodiscard]] double bounded_region_radius() const {
    double r = 0.0;
    for (const ReducedCurve* c : {&gamma12, &gamma13}) {
      for (Point p : c->points()) r = std::max(r, norm(p));
    }
    return r;
  }
};

/// Diagonal ray from `from` out to distance `radius` from the origin.
inline ReducedCurve diagonal_ray(Point from, double radius) {
  const double t = radius / std::numbers::sqrt2;
  detail::require(t > from.x, "diagonal_ray: radius must exceed the start point");
  return ReducedCurve({from, Point{t, t}});
}

/// Re-truncates gamma23 at a new radius; the diagonal ray is unbounded in R^8.
inline ReducedPartition3 with_truncation(ReducedPartition3 p, double radius) {
  detail::require(radius > norm(p.junction),
                  "with_truncation: radius must exceed the junction distance");
  p.truncation_radius = radius;
  p.gamma23 = diagonal_ray(p.junction, radius);
  return p;
}

/// Checks the structural invariants of a reduced 3-partition.
inline void validate(const ReducedPartition3& p, double tol = 1e-9) {
  const double scale = std::max(1.0, norm(p.junction));
  auto near = [&](Point a, Point b) { return distance(a, b) <= tol * scale; };
  detail::require(!p.gamma23.empty(), "ReducedPartition3: gamma23 missing");
  detail::require(near(p.gamma23.front(), p.junction),
                  "ReducedPartition3: gamma23 must start at the junction");
  for (const ReducedCurve* c : {&p.gamma12, &p.gamma13}) {
    if (c->empty()) continue;
    const Point s = c->front();
    detail::require(s.x <= tol * scale || s.y <= tol * scale,
                    "ReducedPartition3: interface must start on an axis");
    detail::require(near(c->back(), p.junction),
                    "ReducedPartition3: interface must end at the junction");
  }
  if (p.symmetric) {
    detail::require(std::abs(p.junction.x - p.junction.y) <= tol * scale,
                    "ReducedPartition3: symmetric junction must be on the diagonal");
    detail::require(p.gamma12.size() == p.gamma13.size(),
                    "ReducedPartition3: symmetric interfaces differ in size");
    const auto a = p.gamma12.points();
    const auto b = p.gamma13.points();
    for (std::size_t i = 0; i < a.size(); ++i) {
      detail::require(near(a[i], Point{b[i].y, b[i].x}),
                      "ReducedPartition3: gamma12 is not the mirror of gamma13");
    }
  }
}

/// Simons cone: no bounded region, the diagonal ray alone.
inline ReducedPartition3 simons_partition(double truncation_radius = 10.0) {
  ReducedPartition3 p;
  p.junction = {0.0, 0.0};
  p.truncation_radius = truncation_radius;
  p.gamma23 = diagonal_ray(p.junction, truncation_radius);
  return p;
}

/// Barrel: the square [0, side]² inserted at the vertex of the Simons cone.
inline ReducedPartition3 barrel_partition(double side = 1.0,
                                          double truncation_factor = 5.0) {
  detail::require(side > 0.0, "barrel_partition: side must be positive");
  ReducedPartition3 p;
  p.junction = {side, side};
  p.gamma13 = ReducedCurve({{side, 0.0}, {side, side}});
  p.gamma12 = p.gamma13.mirrored();
  p.truncation_radius = truncation_factor * norm(p.junction);
  p.gamma23 = diagonal_ray(p.junction, p.truncation_radius);
  return p;
}

}  // namespace isopart

#endif  // ISOPART_PARTITION3_HPP_
