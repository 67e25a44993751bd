#ifndef ISOPART_ASYMPTOTICS_HPP_
#define ISOPART_ASYMPTOTICS_HPP_

/*!
 * \file
 * \brief Density ratios Per(F, B_ρ∖B_R)/ρ⁷, blow-downs, and density
 *        estimates for cones in R^8.
 *
 * Balls centred at the origin of R^8 reduce to quarter disks. For balls
 * centred at p = (u⃗, v⃗) away from the origin the reduction is lost, but the
 * perimeter of the Simons cone inside B_ρ(p) only depends on (|u⃗|, |v⃗|):
 * writing cone points as (tω₁, tω₂) with ω_i ∈ S³ at polar angles α_i from
 * u⃗ and v⃗,
 *
 *   Per(S, B_ρ(p)) = (4π)² √2 ∫ t⁶ ∫∫ sin²α₁ sin²α₂ 1{|·−p| < ρ} dα₂ dα₁ dt,
 *
 * and the α₂ integral of the indicator has a closed form.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "isopart/errors.hpp"
#include "isopart/exact_geometry.hpp"
#include "isopart/partition3.hpp"
#include "isopart/reduced_plane.hpp"

namespace isopart {

/// Density of the Simons cone at its vertex, Per(S, B_ρ)/ρ⁷ = π⁴/14.
inline constexpr double kSimonsConeDensity =
    std::numbers::pi * std::numbers::pi * std::numbers::pi * std::numbers::pi / 14.0;

struct DensityScan {
  Point center{};
  double base_radius = 0.0;
  std::vector<double> radii;
  std::vector<double> ratios;       // Per(F, B_ρ∖B_R)/ρ⁷
  std::vector<double> full_ratios;  // Per(F, B_ρ)/ρ⁷
  double theta_last = 0.0;          // full ratio at the largest radius
  double theta_extrapolated = 0.0;  // Richardson estimate of the ρ → ∞ limit

  /// True when no ratio drops by more than slack × max(ratios).
  [[nodiscard]] bool nondecreasing(double relative_slack) const {
    if (ratios.empty()) return true;
    const double top = *std::max_element(ratios.begin(), ratios.end());
    const double slack = relative_slack * std::abs(top);
    for (std::size_t i = 1; i < ratios.size(); ++i) {
      if (ratios[i] < ratios[i - 1] - slack) return false;
    }
    return true;
  }
};

/// Per(p, B_ρ∖B_R)/ρ⁷ for each ρ. The diagonal ray is extended past the
/// largest radius so truncation never enters the measurement.
inline DensityScan monotonicity_scan(const ReducedPartition3& p, double R,
                                     std::span<const double> radii) {
  detail::require(R >= 0.0, "monotonicity_scan: R must be non-negative");
  detail::require(p.bounded_region_radius() <= R,
                  "monotonicity_scan: bounded region is not contained in B_R");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    detail::require(radii[i] > R, "monotonicity_scan: radii must exceed R");
    detail::require(i == 0 || radii[i] > radii[i - 1],
                    "monotonicity_scan: radii must be strictly increasing");
  }

  DensityScan scan;
  scan.base_radius = R;
  scan.radii.assign(radii.begin(), radii.end());
  if (radii.empty()) return scan;

  ReducedPartition3 q = p;
  const double reach = 2.0 * radii.back();
  if (q.truncation_radius < reach) q = with_truncation(std::move(q), reach);

  constexpr int d_minus_1 = kAmbientDimension - 1;
  for (double rho : radii) {
    double annulus = 0.0;
    double ball = 0.0;
    for (const ReducedCurve* c : q.interfaces()) {
      annulus += weighted_length_within(*c, R, rho);
      ball += weighted_length_within(*c, 0.0, rho);
    }
    const double scale = std::pow(rho, d_minus_1);
    scan.ratios.push_back(annulus / scale);
    scan.full_ratios.push_back(ball / scale);
  }

  // Outside B_R the partition is a cone, so the full ratio is Θ + C ρ^{-7}.
  scan.theta_last = scan.full_ratios.back();
  scan.theta_extrapolated = scan.theta_last;
  if (radii.size() >= 2) {
    const std::size_t n = radii.size();
    const double w1 = std::pow(radii[n - 2], d_minus_1);
    const double w2 = std::pow(radii[n - 1], d_minus_1);
    scan.theta_extrapolated =
        (w2 * scan.full_ratios[n - 1] - w1 * scan.full_ratios[n - 2]) / (w2 - w1);
  }
  return scan;
}

/// The partition p/r.
inline ReducedPartition3 blow_down(const ReducedPartition3& p, double r) {
  detail::require(r > 0.0, "blow_down: scale must be positive");
  if (r == 1.0) return p;
  const double t = 1.0 / r;
  ReducedPartition3 q = p;
  q.gamma12 = p.gamma12.empty() ? ReducedCurve{} : p.gamma12.scaled(t);
  q.gamma13 = p.gamma13.empty() ? ReducedCurve{} : p.gamma13.scaled(t);
  q.gamma23 = p.gamma23.empty() ? ReducedCurve{} : p.gamma23.scaled(t);
  q.junction = t * p.junction;
  q.truncation_radius = t * p.truncation_radius;
  return q;
}

namespace detail {

inline double point_segment_distance(Point p, Point a, Point b) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  const double t = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
  return distance(p, a + t * d);
}

/// Distance from p to the curve, or some value <= floor once the distance
/// is known to be below floor.
inline double point_curve_distance(Point p, const ReducedCurve& c,
                                   double floor = -1.0) {
  double best = std::numeric_limits<double>::infinity();
  const auto pts = c.points();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    best = std::min(best, point_segment_distance(p, pts[i - 1], pts[i]));
    if (best <= floor) break;
  }
  return best;
}

}  // namespace detail

/// Sampled Hausdorff distance, inside the reduced ball of `window_radius`,
/// between the interfaces of p and the diagonal (the Simons cone generator).
inline double hausdorff_to_simons(const ReducedPartition3& p,
                                  double window_radius = 1.0,
                                  int samples = 4000) {
  detail::require(window_radius > 0.0 && samples >= 2,
                  "hausdorff_to_simons: bad window or sample count");
  ReducedPartition3 q = p;
  if (q.truncation_radius < window_radius) q = with_truncation(std::move(q), window_radius);
  const Point diag_end{window_radius / std::numbers::sqrt2, window_radius / std::numbers::sqrt2};

  double from_interfaces = 0.0;
  for (const ReducedCurve* c : q.interfaces()) {
    const auto pts = c->points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (norm(pts[i]) <= window_radius) {
        from_interfaces = std::max(
            from_interfaces, detail::point_segment_distance(pts[i], {0.0, 0.0}, diag_end));
      }
    }
  }

  // Diagonal samples: dense near the bounded region, uniform out to the window.
  std::vector<double> ts;
  const double inner = std::min(window_radius, 3.0 * std::max(norm(q.junction), q.bounded_region_radius()));
  for (int k = 0; k <= samples; ++k) ts.push_back(inner * k / samples);
  for (int k = 0; k <= samples; ++k) ts.push_back(window_radius * k / samples);
  double from_diagonal = 0.0;
  for (double t : ts) {
    const Point d{t / std::numbers::sqrt2, t / std::numbers::sqrt2};
    double best = std::numeric_limits<double>::infinity();
    for (const ReducedCurve* c : {&q.gamma23, &q.gamma12, &q.gamma13}) {
      best = std::min(best, detail::point_curve_distance(d, *c, from_diagonal));
      if (best <= from_diagonal) break;
    }
    from_diagonal = std::max(from_diagonal, best);
  }
  return std::max(from_interfaces, from_diagonal);
}

enum class ConeKind { simons, hyperplane };

/// Per(S, B_ρ(p))/ρ⁷ for the Simons cone S and an R^8 centre p = (u⃗, v⃗)
/// with |u⃗| = center.x, |v⃗| = center.y.
inline double simons_cone_density(Point center, double rho, double tol = 1e-10) {
  detail::require(center.x >= 0.0 && center.y >= 0.0,
                  "simons_cone_density: center outside the quadrant");
  detail::require(rho > 0.0, "simons_cone_density: radius must be positive");
  constexpr double pi = std::numbers::pi;
  const double u = center.x;
  const double v = center.y;
  const double r2 = rho * rho;
  const double c2 = u * u + v * v;

  // ∫_0^A sin²α dα = (2A − sin 2A)/4, with a series where it cancels.
  auto sin2_integral = [](double A) {
    const double x = 2.0 * A;
    if (x > 0.1) return 0.25 * (x - std::sin(x));
    const double x2 = x * x;
    return 0.25 * x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
  };
  // Angle A with 4 w sin²(A/2) = W, clamped to [0, π].
  auto half_angle = [](double W, double w) {
    if (W <= 0.0) return 0.0;
    if (W >= 4.0 * w) return pi;
    return 2.0 * std::asin(std::sqrt(W / (4.0 * w)));
  };

  // With 1 − cos α = 2 sin²(α/2) the ball condition reads
  //   4tu sin²(α₁/2) + 4tv sin²(α₂/2) < ρ² − (t − u)² − (t − v)² =: W₀,
  // free of cancellation for small balls.
  auto inner = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double w0 = r2 - (t - u) * (t - u) - (t - v) * (t - v);
    if (w0 <= 0.0) return 0.0;
    const double tu = t * u, tv = t * v;
    double value;
    if (u > 0.0) {
      const double a_max = half_angle(w0, tu);
      const double a_full = v > 0.0 ? half_angle(w0 - 4.0 * tv, tu) : a_max;
      value = (pi / 2.0) * sin2_integral(a_full);
      if (v > 0.0 && a_max > a_full) {
        auto f = [&](double a1) {
          const double s = std::sin(a1);
          const double h = std::sin(0.5 * a1);
          return s * s * sin2_integral(half_angle(w0 - 4.0 * tu * h * h, tv));
        };
        value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a_full, a_max, 15, tol);
      }
    } else {
      value = (pi / 2.0) * (v > 0.0 ? sin2_integral(half_angle(w0, tv)) : pi / 2.0);
    }
    return t * t * t * t * t * t * value;
  };

  // |cone point − p|² = 2t² + c² − 2t(u cos α₁ + v cos α₂) ≥ (√2 t − |p|)².
  const double t_max = (std::sqrt(c2) + rho) / std::numbers::sqrt2;
  const double t_min = std::max(0.0, (std::sqrt(c2) - rho) / std::numbers::sqrt2);
  if (t_max <= t_min) return 0.0;
  // The α limits saturate where 2t² − 2t(±u ± v) + c² − ρ² = 0; the
  // integrand has kinks there.
  std::vector<double> cuts = {t_min, t_max};
  for (double s : {u + v, u - v, v - u, -u - v}) {
    const double disc = s * s - 2.0 * (c2 - r2);
    if (disc < 0.0) continue;
    for (double t : {0.5 * (s - std::sqrt(disc)), 0.5 * (s + std::sqrt(disc))}) {
      if (t > t_min && t < t_max) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double integral = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] <= cuts[i - 1]) continue;
    integral += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        inner, cuts[i - 1], cuts[i], 15, tol);
  }
  const double perimeter = 16.0 * pi * pi * std::numbers::sqrt2 * integral;
  return perimeter / std::pow(rho, kAmbientDimension - 1);
}

struct DensityEstimate {
  double sup = 0.0;
  Point argmax_center{};
  double argmax_radius = 0.0;
};

/// Largest density ratio over the sampled (center, radius) grid. For the
/// hyperplane every ball meeting it centrally has density ω_7, which is
/// returned directly.
inline DensityEstimate density_sup_estimate(ConeKind cone,
                                            std::span<const Point> centers,
                                            std::span<const double> radii) {
  detail::require(!centers.empty() && !radii.empty(),
                  "density_sup_estimate: empty sample grid");
  DensityEstimate est;
  if (cone == ConeKind::hyperplane) {
    est.sup = unit_ball_volume(kAmbientDimension - 1);
    est.argmax_center = centers.front();
    est.argmax_radius = radii.front();
    return est;
  }
  est.sup = -1.0;
  for (Point c : centers) {
    for (double r : radii) {
      const double d = simons_cone_density(c, r);
      if (d > est.sup) {
        est.sup = d;
        est.argmax_center = c;
        est.argmax_radius = r;
      }
    }
  }
  return est;
}

}  // namespace isopart

#endif  // ISOPART_ASYMPTOTICS_HPP_
