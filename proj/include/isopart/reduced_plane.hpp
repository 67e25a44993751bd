#ifndef ISOPART_REDUCED_PLANE_HPP_
#define ISOPART_REDUCED_PLANE_HPP_

/*!
 * \file
 * \brief The SO(4)×SO(4) reduction of R^8 to the closed first quadrant.
 *
 * A point (x, y) of the quadrant stands for the product of spheres
 * {|x⃗| = x} × {|y⃗| = y} ⊂ R^4 × R^4, of measure H³(S³)² x³y³ = 4π⁴ x³y³.
 * Curves in the quadrant generate hypersurfaces of revolution and regions
 * generate SO(4)×SO(4)-invariant sets; their R^8 measures are the weighted
 * length and weighted area below. All results are in R^8 units.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "isopart/errors.hpp"

namespace isopart {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double t, Point p) { return {t * p.x, t * p.y}; }
  friend constexpr bool operator==(Point, Point) = default;
};

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

/// H³(S³)², the measure factor of the reduction.
inline constexpr double kReductionFactor =
    4.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi *
    std::numbers::pi;

inline double weight(double x, double y) {
  detail::require(x >= 0.0 && y >= 0.0, "weight: point outside the quadrant");
  const double xy = x * y;
  return xy * xy * xy;
}

namespace detail {

// 5-point Gauss–Legendre on [0, 1]; exact for polynomials of degree 9.
inline constexpr std::array<double, 5> kGaussNodes = {
    0.046910077030668004, 0.23076534494715845, 0.5, 0.76923465505284155,
    0.95308992296933200};
inline constexpr std::array<double, 5> kGaussWeights = {
    0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
    0.23931433524968324, 0.11846344252809454};

inline double cube(double v) { return v * v * v; }

}  // namespace detail

/// Polyline in the closed first quadrant with cumulative arclength.
/// An empty curve is valid and has zero measure; otherwise it has at least
/// two points and no zero-length segment.
class ReducedCurve {
 public:
  ReducedCurve() = default;

  explicit ReducedCurve(std::vector<Point> points) : points_(std::move(points)) {
    detail::require(points_.empty() || points_.size() >= 2,
                    "ReducedCurve: a curve needs at least two points");
    arclength_.reserve(points_.size());
    double s = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const Point p = points_[i];
      detail::require(p.x >= 0.0 && p.y >= 0.0,
                      "ReducedCurve: point outside the closed first quadrant");
      if (i > 0) {
        const double len = distance(points_[i - 1], p);
        detail::require(len > 0.0, "ReducedCurve: zero-length segment");
        s += len;
      }
      arclength_.push_back(s);
    }
  }

  [[nodiscard]] std::span<const Point> points() const { return points_; }
  [[nodiscard]] std::span<const double> cumulative_arclength() const { return arclength_; }
  [[nodiscard]] bool empty() const { return points_.empty(); }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] Point front() const { return points_.front(); }
  [[nodiscard]] Point back() const { return points_.back(); }
  [[nodiscard]] double length() const { return arclength_.empty() ? 0.0 : arclength_.back(); }

  [[nodiscard]] ReducedCurve reversed() const {
    return ReducedCurve(std::vector<Point>(points_.rbegin(), points_.rend()));
  }

  /// Reflection across the diagonal y = x.
  [[nodiscard]] ReducedCurve mirrored() const {
    std::vector<Point> out;
    out.reserve(points_.size());
    for (Point p : points_) out.push_back({p.y, p.x});
    return ReducedCurve(std::move(out));
  }

  [[nodiscard]] ReducedCurve scaled(double t) const {
    detail::require(t > 0.0, "ReducedCurve::scaled: factor must be positive");
    std::vector<Point> out;
    out.reserve(points_.size());
    for (Point p : points_) out.push_back(t * p);
    return ReducedCurve(std::move(out));
  }

 private:
  std::vector<Point> points_;
  std::vector<double> arclength_;
};

/// 4π⁴ ∫ x³y³ ds of the straight segment a→b restricted to parameters [t0, t1].
inline double segment_weighted_length(Point a, Point b, double t0 = 0.0,
                                      double t1 = 1.0) {
  const Point d = b - a;
  const double span = (t1 - t0) * norm(d);
  double sum = 0.0;
  for (std::size_t i = 0; i < detail::kGaussNodes.size(); ++i) {
    const double t = t0 + (t1 - t0) * detail::kGaussNodes[i];
    const Point p = a + t * d;
    sum += detail::kGaussWeights[i] * detail::cube(p.x * p.y);
  }
  return kReductionFactor * span * sum;
}

/// R^8 perimeter of the hypersurface of revolution generated by the curve.
inline double weighted_length(const ReducedCurve& curve) {
  const auto pts = curve.points();
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    total += segment_weighted_length(pts[i - 1], pts[i]);
  }
  return total;
}

/// Weighted length of the part of the curve with r_inner <= |p| <= r_outer.
/// Segments are clipped exactly against both circles.
inline double weighted_length_within(const ReducedCurve& curve, double r_inner,
                                     double r_outer) {
  detail::require(0.0 <= r_inner && r_inner <= r_outer,
                  "weighted_length_within: need 0 <= r_inner <= r_outer");
  const auto pts = curve.points();
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Point a = pts[i - 1];
    const Point d = pts[i] - a;
    // |a + t d|^2 = A t^2 + B t + C
    const double A = dot(d, d);
    const double B = 2.0 * dot(a, d);
    const double C = dot(a, a);
    std::vector<double> cuts = {0.0, 1.0};
    for (double r : {r_inner, r_outer}) {
      const double disc = B * B - 4.0 * A * (C - r * r);
      if (disc <= 0.0) continue;
      const double sq = std::sqrt(disc);
      for (double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
        if (t > 0.0 && t < 1.0) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 1; k < cuts.size(); ++k) {
      const double t0 = cuts[k - 1];
      const double t1 = cuts[k];
      if (t1 <= t0) continue;
      const double tm = 0.5 * (t0 + t1);
      const double rm = std::sqrt((A * tm + B) * tm + C);
      if (rm >= r_inner && rm <= r_outer) {
        total += segment_weighted_length(a, pts[i], t0, t1);
      }
    }
  }
  return total;
}

/// Oriented boundary of a quadrant region as a chain of curves. Consecutive
/// pieces either meet, or are joined along the coordinate axes, where the
/// weight vanishes.
class BoundaryChain {
 public:
  BoundaryChain() = default;

  explicit BoundaryChain(std::vector<ReducedCurve> pieces,
                         double tolerance = 1e-12)
      : pieces_(std::move(pieces)) {
    std::erase_if(pieces_, [](const ReducedCurve& c) { return c.empty(); });
    double scale = 1.0;
    for (const auto& c : pieces_) {
      for (Point p : c.points()) scale = std::max(scale, norm(p));
    }
    const double tol = tolerance * scale;
    auto on_axes = [tol](Point p) { return p.x <= tol || p.y <= tol; };
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Point end = pieces_[i].back();
      const Point next = pieces_[(i + 1) % pieces_.size()].front();
      const bool joined = distance(end, next) <= tol || (on_axes(end) && on_axes(next));
      detail::require(joined, "BoundaryChain: chain is not closed");
    }
  }

  [[nodiscard]] std::span<const ReducedCurve> pieces() const { return pieces_; }

 private:
  std::vector<ReducedCurve> pieces_;
};

/// R^8 volume of the invariant set generated by the region bounded by the
/// chain: 4π⁴ ∮ (x⁴/4) y³ dy, positive for counter-clockwise orientation.
inline double weighted_area(const BoundaryChain& boundary) {
  double total = 0.0;
  for (const auto& curve : boundary.pieces()) {
    const auto pts = curve.points();
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const Point a = pts[i - 1];
      const Point d = pts[i] - a;
      double sum = 0.0;
      for (std::size_t k = 0; k < detail::kGaussNodes.size(); ++k) {
        const Point p = a + detail::kGaussNodes[k] * d;
        const double x2 = p.x * p.x;
        sum += detail::kGaussWeights[k] * 0.25 * x2 * x2 * detail::cube(p.y);
      }
      total += d.y * sum;
    }
  }
  return kReductionFactor * total;
}

}  // namespace isopart

#endif  // ISOPART_REDUCED_PLANE_HPP_
