// Solves the deformed barrel at unit mean curvature and compares its defect
// with the barrel, the lens and the ball.
#include <cstdio>

#include "isopart/isopart.hpp"

int main() {
  using namespace isopart;
  const Solution sol = solve_partition(SolverConfig::for_lambda(1.0));
  const DefectReport& r = sol.report;
  std::printf("intercept a      = %.10f\n", r.intercept_a);
  std::printf("junction         = (%.10f, %.10f)\n", r.junction.x, r.junction.y);
  std::printf("Per(r(E1))       = %.6e\n", r.perimeter_E1);
  std::printf("|r(E1)|          = %.6e\n", r.volume_E1);
  std::printf("cone inside      = %.6e\n", r.cone_inside);
  std::printf("defect           = %.6f\n", r.defect);
  std::printf("barrel defect    = %.6f\n", barrel_quantities().defect);
  std::printf("lens defect      = %.6f\n", lens_quantities().defect);
  std::printf("ball defect      = %.6f\n", ball_defect());
}
