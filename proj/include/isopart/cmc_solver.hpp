#ifndef ISOPART_CMC_SOLVER_HPP_
#define ISOPART_CMC_SOLVER_HPP_

/*!
 * \file
 * \brief Constant weighted mean curvature deformation of the barrel.
 *
 * The interface between region 1 and region 3 is a curve in the reduced
 * quadrant whose hypersurface of revolution has constant mean curvature
 * λ (sum of the 7 principal curvatures). In arclength with tangent angle θ
 * and outward normal n = (sin θ, −cos θ):
 *
 *   x' = cos θ,  y' = sin θ,  θ' = λ − 3 (n_x / x + n_y / y).
 *
 * The curve leaves the x-axis orthogonally at (a, 0) and is shot until it
 * meets the diagonal; `a` is tuned by bisection so that region 1 has an
 * interior angle of 120° at the junction. Mirroring across the diagonal
 * gives the 1|2 interface and the diagonal ray beyond the junction is the
 * 2|3 interface, which is weighted-minimal.
 */

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "isopart/errors.hpp"
#include "isopart/exact_geometry.hpp"
#include "isopart/partition3.hpp"
#include "isopart/reduced_plane.hpp"

namespace isopart {

/// κ + 3(n_x/x + n_y/y): mean curvature (sum of principal curvatures) of the
/// hypersurface of revolution at a point of its generating curve, where κ
/// is the planar curvature with respect to the unit normal n.
inline double weighted_curvature(Point point, Point unit_normal, double kappa) {
  detail::require(point.x > 0.0 && point.y > 0.0,
                  "weighted_curvature: point lies on a coordinate axis");
  return kappa + 3.0 * (unit_normal.x / point.x + unit_normal.y / point.y);
}

struct ShootState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double s = 0.0;
};

struct SolverConfig {
  double lambda = 1.0;
  double step = 1e-4;      // RK4 step, relative to the intercept a
  double axis_eps = 1e-3;  // height of the series patch, relative to a
  double a_lo = 3.0;
  double a_hi = 8.0;
  double tol_angle = 1e-8;
  double tol_root = 1e-10;
  std::size_t max_steps = 10'000'000;
  double truncation_factor = 5.0;  // gamma23 drawn to this × |junction|

  /// Defaults with the bracket scaled to λ; a = 3/λ is the flat barrel face.
  static SolverConfig for_lambda(double lambda) {
    SolverConfig cfg;
    cfg.lambda = lambda;
    cfg.a_lo = 3.0 / lambda;
    cfg.a_hi = 8.0 / lambda;
    return cfg;
  }

  void validate() const {
    detail::require(lambda > 0.0, "SolverConfig: lambda must be positive");
    detail::require(step > 0.0 && axis_eps > 0.0,
                    "SolverConfig: step and axis_eps must be positive");
    detail::require(0.0 < a_lo && a_lo < a_hi,
                    "SolverConfig: bracket must satisfy 0 < a_lo < a_hi");
    detail::require(tol_angle > 0.0 && tol_root > 0.0,
                    "SolverConfig: tolerances must be positive");
    detail::require(max_steps > 0, "SolverConfig: max_steps must be positive");
    detail::require(truncation_factor > 1.0,
                    "SolverConfig: truncation_factor must exceed 1");
  }
};

enum class Termination { crossed_diagonal, left_quadrant, step_limit };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::crossed_diagonal: return "crossed_diagonal";
    case Termination::left_quadrant: return "left_quadrant";
    case Termination::step_limit: return "step_limit";
  }
  return "unknown";
}

struct ShootResult {
  std::vector<ShootState> trajectory;
  Termination termination = Termination::step_limit;
  double crossing_angle = 0.0;  // tangent angle minus the diagonal's π/4
};

/// Interior angle of region 1 at a diagonal junction, minus 120°, for a
/// curve arriving from below the diagonal with tangent angle θ. With the
/// mirror interface and the diagonal ray, zero means three 120° angles.
inline double junction_residual_from_tangent(double theta) {
  const double c = std::cos(theta - std::numbers::pi / 4.0);
  const double half = std::acos(std::clamp(c, -1.0, 1.0));
  return 2.0 * half - 2.0 * std::numbers::pi / 3.0;
}

namespace detail {

struct OdeState {
  double x, y, theta;
};

inline OdeState cmc_rhs(const OdeState& u, double lambda) {
  const double sn = std::sin(u.theta);
  const double cs = std::cos(u.theta);
  return {cs, sn, lambda - 3.0 * (sn / u.x - cs / u.y)};
}

inline OdeState rk4_step(const OdeState& u, double h, double lambda) {
  auto axpy = [](const OdeState& a, double t, const OdeState& k) {
    return OdeState{a.x + t * k.x, a.y + t * k.y, a.theta + t * k.theta};
  };
  const OdeState k1 = cmc_rhs(u, lambda);
  const OdeState k2 = cmc_rhs(axpy(u, 0.5 * h, k1), lambda);
  const OdeState k3 = cmc_rhs(axpy(u, 0.5 * h, k2), lambda);
  const OdeState k4 = cmc_rhs(axpy(u, h, k3), lambda);
  return {u.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          u.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
          u.theta + h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta)};
}

// Even expansion x(y) = a + b y² + c y⁴ of the curve near the axis, from
// balancing the weighted curvature order by order.
struct AxisSeries {
  double a, b, c;

  AxisSeries(double intercept, double lambda) : a(intercept) {
    const double al = intercept * lambda;
    b = (3.0 - al) / (8.0 * intercept);
    c = -(al - 5.0) * (al - 3.0) * (al + 1.0) / (512.0 * intercept * intercept * intercept);
  }

  [[nodiscard]] double x(double y) const { return a + y * y * (b + c * y * y); }
  [[nodiscard]] double slope(double y) const { return y * (2.0 * b + 4.0 * c * y * y); }
  [[nodiscard]] double theta(double y) const { return std::atan2(1.0, slope(y)); }

  [[nodiscard]] double arclength(double y0, double y1) const {
    double s = 0.0;
    for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
      const double y = y0 + (y1 - y0) * kGaussNodes[i];
      const double m = slope(y);
      s += kGaussWeights[i] * std::sqrt(1.0 + m * m);
    }
    return (y1 - y0) * s;
  }
};

}  // namespace detail

/// Integrates the profile curve from (a, 0) until it meets the diagonal,
/// leaves the quadrant, or exhausts cfg.max_steps.
inline ShootResult shoot(double a, const SolverConfig& cfg) {
  cfg.validate();
  detail::require(a > 0.0, "shoot: intercept must be positive");
  const double lambda = cfg.lambda;
  const double h = cfg.step * a;

  ShootResult result;
  auto& traj = result.trajectory;
  traj.push_back({a, 0.0, std::numbers::pi / 2.0, 0.0});

  const detail::AxisSeries series(a, lambda);
  const double y_patch = cfg.axis_eps * a;
  constexpr int kPatchPoints = 4;
  double s = 0.0;
  for (int k = 1; k <= kPatchPoints; ++k) {
    const double y0 = y_patch * (k - 1) / kPatchPoints;
    const double y1 = y_patch * k / kPatchPoints;
    s += series.arclength(y0, y1);
    traj.push_back({series.x(y1), y1, series.theta(y1), s});
  }

  detail::OdeState u{traj.back().x, traj.back().y, traj.back().theta};
  for (std::size_t n = 0; n < cfg.max_steps; ++n) {
    const detail::OdeState next = detail::rk4_step(u, h, lambda);
    if (next.y - next.x >= 0.0) {
      // Land exactly on the diagonal: solve y − x = 0 over the partial step.
      double lo = 0.0, hi = h;
      double g_lo = u.y - u.x, g_hi = next.y - next.x;
      detail::OdeState hit = next;
      for (int it = 0; it < 100 && hi - lo > 1e-15 * a; ++it) {
        double tau = lo - g_lo * (hi - lo) / (g_hi - g_lo);
        if (!(tau > lo && tau < hi)) tau = 0.5 * (lo + hi);
        hit = detail::rk4_step(u, tau, lambda);
        const double g = hit.y - hit.x;
        if (g >= 0.0) {
          hi = tau;
          g_hi = g;
        } else {
          lo = tau;
          g_lo = g;
        }
        if (std::abs(g) <= 1e-15 * a) {
          lo = hi = tau;
          break;
        }
      }
      const double tau = hi;
      hit = detail::rk4_step(u, tau, lambda);
      const double m = 0.5 * (hit.x + hit.y);
      s += tau;
      traj.push_back({m, m, hit.theta, s});
      result.termination = Termination::crossed_diagonal;
      result.crossing_angle = hit.theta - std::numbers::pi / 4.0;
      return result;
    }
    if (next.y <= 0.0 || next.x <= 0.0) {
      result.termination = Termination::left_quadrant;
      return result;
    }
    u = next;
    s += h;
    traj.push_back({u.x, u.y, u.theta, s});
  }
  result.termination = Termination::step_limit;
  return result;
}

/// Shoot failure at a given intercept; carries how the trajectory ended.
class ShootError : public ConvergenceError {
 public:
  ShootError(double intercept, Termination t)
      : ConvergenceError("shoot from a = " + std::to_string(intercept) +
                         " did not reach the diagonal (" + to_string(t) + ")"),
        termination_(t) {}
  [[nodiscard]] Termination termination() const { return termination_; }

 private:
  Termination termination_;
};

/// Interior junction angle of region 1 minus 120°, in radians.
inline double junction_residual(double a, const SolverConfig& cfg) {
  const ShootResult r = shoot(a, cfg);
  if (r.termination != Termination::crossed_diagonal) {
    throw ShootError(a, r.termination);
  }
  return junction_residual_from_tangent(r.trajectory.back().theta);
}

struct DefectReport {
  double perimeter_E1 = 0.0;  // Per(r(E_1))
  double volume_E1 = 0.0;     // |r(E_1)|
  double cone_inside = 0.0;   // Per(S_2, r(E_1))
  double defect = 0.0;
  double lambda = 0.0;
  double intercept_a = 0.0;
  Point junction{};
  double junction_residual = 0.0;
  int iterations = 0;
};

struct Solution {
  ReducedPartition3 partition;
  DefectReport report;
  ShootResult shot;
};

/// Region-1 measures of a symmetric reduced partition and its defect against
/// the Simons cone.
inline DefectReport defect_report(const ReducedPartition3& p) {
  detail::require(p.has_bounded_region(), "defect_report: no bounded region");
  DefectReport r;
  r.junction = p.junction;
  r.perimeter_E1 = weighted_length(p.gamma12) + weighted_length(p.gamma13);
  r.volume_E1 = weighted_area(BoundaryChain({p.gamma13, p.gamma12.reversed()}));
  r.cone_inside = weighted_length(ReducedCurve({{0.0, 0.0}, p.junction}));
  r.defect = defect(r.perimeter_E1, r.cone_inside, r.volume_E1);
  return r;
}

inline Solution solve_partition(const SolverConfig& cfg) {
  cfg.validate();
  auto endpoint_residual = [&](double a) {
    try {
      return junction_residual(a, cfg);
    } catch (const ShootError& e) {
      throw PreconditionError(std::string("solve_partition: bracket endpoint: ") + e.what());
    }
  };

  double lo = cfg.a_lo, hi = cfg.a_hi;
  double r_lo = endpoint_residual(lo);
  const double r_hi = endpoint_residual(hi);
  if ((r_lo > 0.0) == (r_hi > 0.0) || r_lo == 0.0 || r_hi == 0.0) {
    if (r_lo == 0.0) hi = lo;
    else if (r_hi == 0.0) lo = hi;
    else throw PreconditionError("solve_partition: no sign change of the junction residual in the bracket");
  }

  constexpr int kMaxIterations = 200;
  int iterations = 0;
  while (hi - lo > cfg.tol_root) {
    if (++iterations > kMaxIterations) {
      throw ConvergenceError("solve_partition: bisection did not converge");
    }
    const double mid = 0.5 * (lo + hi);
    const double r_mid = junction_residual(mid, cfg);
    if ((r_mid > 0.0) == (r_lo > 0.0)) {
      lo = mid;
      r_lo = r_mid;
    } else {
      hi = mid;
    }
  }

  Solution sol;
  const double a = 0.5 * (lo + hi);
  sol.shot = shoot(a, cfg);
  if (sol.shot.termination != Termination::crossed_diagonal) {
    throw ShootError(a, sol.shot.termination);
  }
  const double residual = junction_residual_from_tangent(sol.shot.trajectory.back().theta);
  if (!(std::abs(residual) <= cfg.tol_angle)) {
    throw ConvergenceError("solve_partition: junction residual " +
                           std::to_string(residual) + " exceeds tol_angle");
  }

  std::vector<Point> pts;
  pts.reserve(sol.shot.trajectory.size());
  for (const auto& st : sol.shot.trajectory) pts.push_back({st.x, st.y});

  auto& part = sol.partition;
  part.junction = pts.back();
  part.gamma13 = ReducedCurve(std::move(pts));
  part.gamma12 = part.gamma13.mirrored();
  part.symmetric = true;
  part = with_truncation(std::move(part), cfg.truncation_factor * norm(part.junction));

  sol.report = defect_report(part);
  sol.report.lambda = cfg.lambda;
  sol.report.intercept_a = a;
  sol.report.junction_residual = residual;
  sol.report.iterations = iterations;
  return sol;
}

}  // namespace isopart

#endif  // ISOPART_CMC_SOLVER_HPP_
