#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>
#include <gtest/gtest.h>

#include "isopart/cmc_solver.hpp"
#include "isopart/exact_geometry.hpp"
#include "test_support.hpp"

namespace isopart {
namespace {

using testing::rel_err;
constexpr double pi = std::numbers::pi;

// One shared solve at the default configuration.
const Solution& default_solution() {
  static const Solution sol = solve_partition(SolverConfig{});
  return sol;
}

// Adaptive Dormand–Prince integration of the same profile ODE, started on
// the axis series and stopped on the diagonal. Returns (x, y, theta).
std::array<double, 3> oracle_junction(double a, double lambda) {
  using State = std::array<double, 3>;
  namespace odeint = boost::numeric::odeint;
  const detail::AxisSeries series(a, lambda);
  const double y0 = 1e-4 * a;
  State u = {series.x(y0), y0, series.theta(y0)};
  auto rhs = [lambda](const State& s, State& d, double) {
    d[0] = std::cos(s[2]);
    d[1] = std::sin(s[2]);
    d[2] = lambda - 3.0 * (std::sin(s[2]) / s[0] - std::cos(s[2]) / s[1]);
  };
  auto stepper = odeint::make_dense_output(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>());
  stepper.initialize(u, 0.0, 1e-6 * a);
  while (true) {
    stepper.do_step(rhs);
    const State& cur = stepper.current_state();
    if (cur[1] >= cur[0]) break;
  }
  double lo = stepper.previous_time(), hi = stepper.current_time();
  State mid{};
  for (int it = 0; it < 200; ++it) {
    const double t = 0.5 * (lo + hi);
    stepper.calc_state(t, mid);
    (mid[1] >= mid[0] ? hi : lo) = t;
  }
  stepper.calc_state(hi, mid);
  return mid;
}

TEST(WeightedCurvature, Examples) {
  const double r = 1.0 / std::numbers::sqrt2;
  EXPECT_NEAR(weighted_curvature({2.5, 2.5}, {r, -r}, 0.0), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(weighted_curvature({1.0, 0.7}, {1.0, 0.0}, 0.0), 3.0);
  EXPECT_NEAR(weighted_curvature({1e9, 1e9}, {0.6, 0.8}, 2.5), 2.5, 1e-8);
}

TEST(WeightedCurvature, RejectsAxisPoints) {
  EXPECT_THROW(weighted_curvature({0.0, 1.0}, {1.0, 0.0}, 0.0), PreconditionError);
  EXPECT_THROW(weighted_curvature({1.0, 0.0}, {1.0, 0.0}, 0.0), PreconditionError);
}

TEST(SolverConfig, Validation) {
  SolverConfig cfg;
  cfg.lambda = 0.0;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg = SolverConfig{};
  cfg.a_lo = 9.0;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg = SolverConfig{};
  cfg.truncation_factor = 1.0;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  EXPECT_NO_THROW(SolverConfig::for_lambda(3.0).validate());
  EXPECT_DOUBLE_EQ(SolverConfig::for_lambda(2.0).a_lo, 1.5);
}

TEST(Shoot, StartsOrthogonalToAxis) {
  const auto r = shoot(4.0, SolverConfig{});
  EXPECT_EQ(r.trajectory.front().y, 0.0);
  EXPECT_DOUBLE_EQ(r.trajectory.front().theta, pi / 2.0);
  EXPECT_EQ(r.termination, Termination::crossed_diagonal);
  const auto& end = r.trajectory.back();
  EXPECT_DOUBLE_EQ(end.x, end.y);
}

TEST(Shoot, MatchesAdaptiveOracle) {
  const SolverConfig cfg;
  for (double a : {3.5, 4.38, 5.0, 6.0}) {
    const auto r = shoot(a, cfg);
    ASSERT_EQ(r.termination, Termination::crossed_diagonal) << a;
    const auto o = oracle_junction(a, cfg.lambda);
    EXPECT_NEAR(r.trajectory.back().x, o[0], 1e-7 * a) << a;
    EXPECT_NEAR(r.trajectory.back().theta, o[2], 1e-6) << a;
  }
}

TEST(Shoot, StepLimitIsReported) {
  SolverConfig cfg;
  cfg.max_steps = 10;
  EXPECT_EQ(shoot(4.0, cfg).termination, Termination::step_limit);
  EXPECT_THROW(junction_residual(4.0, cfg), ShootError);
  try {
    junction_residual(4.0, cfg);
  } catch (const ShootError& e) {
    EXPECT_EQ(e.termination(), Termination::step_limit);
  }
}

TEST(Shoot, RejectsBadIntercept) {
  EXPECT_THROW(shoot(0.0, SolverConfig{}), PreconditionError);
  EXPECT_THROW(shoot(-1.0, SolverConfig{}), PreconditionError);
}

TEST(JunctionResidual, BracketSignsAndFlatFace) {
  const SolverConfig cfg;
  const double lo = junction_residual(cfg.a_lo, cfg);
  const double hi = junction_residual(cfg.a_hi, cfg);
  EXPECT_LT(lo * hi, 0.0);
  // a = 3/λ keeps κ_w = λ with a straight vertical face: the barrel corner.
  EXPECT_NEAR(junction_residual(3.0, cfg), -pi / 6.0, 1e-9);
  EXPECT_NEAR(junction_residual_from_tangent(pi / 2.0), -pi / 6.0, 1e-15);
  EXPECT_NEAR(junction_residual_from_tangent(pi / 4.0 + pi / 3.0), 0.0, 1e-15);
}

TEST(JunctionResidual, ContinuousAcrossBracket) {
  const SolverConfig cfg;
  constexpr int n = 60;
  double prev = junction_residual(cfg.a_lo, cfg);
  int sign_changes = 0;
  for (int k = 1; k <= n; ++k) {
    const double a = cfg.a_lo + (cfg.a_hi - cfg.a_lo) * k / n;
    const double cur = junction_residual(a, cfg);
    EXPECT_LT(std::abs(cur - prev), 0.1) << a;
    if ((cur > 0) != (prev > 0)) ++sign_changes;
    prev = cur;
  }
  EXPECT_EQ(sign_changes, 1);
}

TEST(SolvePartition, ResidualVanishesAtSolution) {
  const auto& sol = default_solution();
  EXPECT_LE(std::abs(sol.report.junction_residual), SolverConfig{}.tol_angle);
  EXPECT_NEAR(junction_residual(sol.report.intercept_a, SolverConfig{}), 0.0, 1e-8);
  EXPECT_GT(sol.report.iterations, 0);
}

TEST(SolvePartition, ReferenceValues) {
  const auto& r = default_solution().report;
  EXPECT_NEAR(r.defect, 6.82, 0.05);
  EXPECT_LT(rel_err(r.perimeter_E1, 27.91e5), 0.01);
  EXPECT_LT(rel_err(r.volume_E1, 16.04e5), 0.01);
  EXPECT_LT(rel_err(r.cone_inside, 9.58e5), 0.01);
}

TEST(SolvePartition, ReportConsistency) {
  const auto& sol = default_solution();
  const auto& r = sol.report;
  EXPECT_DOUBLE_EQ(r.defect, defect(r.perimeter_E1, r.cone_inside, r.volume_E1));
  const auto again = defect_report(sol.partition);
  EXPECT_DOUBLE_EQ(again.defect, r.defect);
  EXPECT_NO_THROW(validate(sol.partition));
  EXPECT_DOUBLE_EQ(r.junction.x, r.junction.y);
}

TEST(SolvePartition, MirrorSymmetry) {
  const auto& p = default_solution().partition;
  const auto a = p.gamma13.points();
  const auto b = p.gamma12.points();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x, b[i].y);
    EXPECT_EQ(a[i].y, b[i].x);
  }
}

TEST(SolvePartition, DefectOrdering) {
  const double d = default_solution().report.defect;
  EXPECT_LT(d, barrel_quantities().defect);
  EXPECT_LT(barrel_quantities().defect, lens_quantities().defect);
}

TEST(SolvePartition, DiscreteCurvatureEqualsLambda) {
  const SolverConfig cfg;
  const auto& traj = default_solution().shot.trajectory;
  // Skip the axis patch and the partial final step.
  double worst = 0.0;
  for (std::size_t i = 6; i + 2 < traj.size(); ++i) {
    const Point p0{traj[i - 1].x, traj[i - 1].y};
    const Point p1{traj[i].x, traj[i].y};
    const Point p2{traj[i + 1].x, traj[i + 1].y};
    const Point u = p1 - p0, v = p2 - p1, w = p2 - p0;
    const double cross = u.x * v.y - u.y * v.x;
    const double kappa = 2.0 * cross / (norm(u) * norm(v) * norm(w));
    const Point t = (1.0 / norm(w)) * w;
    const double k_w = weighted_curvature(p1, {t.y, -t.x}, kappa);
    worst = std::max(worst, std::abs(k_w - cfg.lambda) / cfg.lambda);
  }
  EXPECT_LE(worst, 10.0 * cfg.step);
}

TEST(SolvePartition, LambdaScaling) {
  const auto& base = default_solution().report;
  const auto twice = solve_partition(SolverConfig::for_lambda(2.0)).report;
  EXPECT_LT(rel_err(twice.intercept_a, 0.5 * base.intercept_a), 1e-8);
  EXPECT_LT(rel_err(twice.junction.x, 0.5 * base.junction.x), 1e-8);
  EXPECT_LT(rel_err(twice.perimeter_E1, std::pow(2.0, -7) * base.perimeter_E1), 1e-6);
  EXPECT_LT(rel_err(twice.volume_E1, std::pow(2.0, -8) * base.volume_E1), 1e-6);
  EXPECT_LT(rel_err(twice.defect, base.defect), 1e-6);
}

TEST(SolvePartition, DefectInvariantAcrossDecade) {
  const double base = default_solution().report.defect;
  for (double lambda : {0.3, 0.7, 3.0}) {
    const auto r = solve_partition(SolverConfig::for_lambda(lambda)).report;
    EXPECT_LT(rel_err(r.defect, base), 1e-6) << lambda;
  }
}

TEST(SolvePartition, BracketErrors) {
  SolverConfig cfg;
  cfg.a_lo = 5.0;
  cfg.a_hi = 6.0;
  EXPECT_THROW(solve_partition(cfg), PreconditionError);
  cfg = SolverConfig{};
  cfg.max_steps = 10;  // endpoints cannot reach the diagonal
  EXPECT_THROW(solve_partition(cfg), PreconditionError);
}

TEST(SolvePartition, CoarseStepStillSolves) {
  SolverConfig cfg;
  cfg.tol_angle = 1e-3;
  cfg.step = 1e-2;
  const auto r = solve_partition(cfg).report;
  EXPECT_NEAR(r.defect, default_solution().report.defect, 1e-2);
}

TEST(SolvePartition, CoarseRootToleranceFailsAngleCheck) {
  SolverConfig cfg;
  cfg.tol_root = 1e-2;
  EXPECT_THROW(solve_partition(cfg), ConvergenceError);
}

}  // namespace
}  // namespace isopart
