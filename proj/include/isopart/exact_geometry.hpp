#ifndef ISOPART_EXACT_GEOMETRY_HPP_
#define ISOPART_EXACT_GEOMETRY_HPP_

/*!
 * \file
 * \brief Closed-form constants for balls, spheres, and the lens, barrel and
 *        ball partitions of R^8.
 *
 * Everything here is evaluated in double precision from explicit formulas.
 * Defects are perimeter gaps normalised by |E_1|^{7/8}, so they are
 * invariant under dilations of R^8.
 */

#include <cmath>
#include <numbers>

#include "isopart/errors.hpp"

namespace isopart {

inline constexpr int kAmbientDimension = 8;

/// Volume of the unit ball in R^d.
inline double unit_ball_volume(int d) {
  detail::require(d >= 1, "unit_ball_volume: dimension must be >= 1");
  constexpr double pi = std::numbers::pi;
  const int k = d / 2;
  if (d % 2 == 0) {
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    return std::pow(pi, k) / factorial;
  }
  // d = 2k + 1: 2^{k+1} pi^k / d!!
  double double_factorial = 1.0;
  for (int i = d; i > 1; i -= 2) double_factorial *= i;
  return std::pow(2.0, k + 1) * std::pow(pi, k) / double_factorial;
}

/// H^d of the unit sphere S^d in R^{d+1}; S^0 is two points.
inline double sphere_area(int d) {
  detail::require(d >= 0, "sphere_area: dimension must be >= 0");
  return (d + 1) * unit_ball_volume(d + 1);
}

struct DimensionalConstants {
  int d = 0;
  double omega_d = 0.0;
  double sphere_area_dminus1 = 0.0;  // H^{d-1}(S^{d-1}) = d * omega_d
};

inline DimensionalConstants dimensional_constants(int d) {
  const double omega = unit_ball_volume(d);
  return {d, omega, d * omega};
}

/// Perimeter gap over |E_1|^{7/8}, the defect of a 3-partition of R^8.
inline double defect(double perimeter, double background_perimeter,
                     double volume) {
  detail::require(volume > 0.0, "defect: volume must be positive");
  detail::require(background_perimeter >= 0.0,
                  "defect: background perimeter must be non-negative");
  if (perimeter < background_perimeter) {
    throw InconsistentInputError(
        "defect: perimeter is smaller than the background perimeter");
  }
  constexpr double exponent =
      (kAmbientDimension - 1.0) / static_cast<double>(kAmbientDimension);
  return (perimeter - background_perimeter) / std::pow(volume, exponent);
}

/// Lens B_1(e_8/2) ∩ B_1(-e_8/2) against the mid-hyperplane x_8 = 0.
struct LensQuantities {
  double volume = 0.0;        // |L_1|
  double perimeter = 0.0;     // Per(L_1)
  double plane_inside = 0.0;  // Per(H, L_1), the flat 7-disk of radius √3/2
  double defect = 0.0;
};

inline LensQuantities lens_quantities() {
  constexpr double pi = std::numbers::pi;
  constexpr double sqrt3 = std::numbers::sqrt3;
  const double pi3 = pi * pi * pi;
  const double pi4 = pi3 * pi;
  LensQuantities q;
  q.volume = pi4 / 36.0 - 93.0 / 2240.0 * sqrt3 * pi3;
  q.plane_inside = 9.0 / 280.0 * sqrt3 * pi3;
  q.perimeter = 2.0 / 9.0 * pi4 - 3.0 / 10.0 * sqrt3 * pi3;
  q.defect = defect(q.perimeter, q.plane_inside, q.volume);
  return q;
}

/// Closed form of the lens defect, 4 (4π³(16π/9 − 93√3/35))^{1/8}.
inline double lens_defect_closed_form() {
  constexpr double pi = std::numbers::pi;
  const double radicand =
      4.0 * pi * pi * pi * (16.0 * pi / 9.0 - 93.0 * std::numbers::sqrt3 / 35.0);
  return 4.0 * std::pow(radicand, 1.0 / 8.0);
}

/// Bidisc B^4 × B^4 against the Simons cone |x| = |y|.
struct BarrelQuantities {
  double volume = 0.0;       // |Q_1| = ω_4²
  double perimeter = 0.0;    // Per(Q_1)
  double cone_inside = 0.0;  // Per(S_2, Q_1)
  double defect = 0.0;
};

inline BarrelQuantities barrel_quantities() {
  constexpr double pi = std::numbers::pi;
  const double pi4 = pi * pi * pi * pi;
  BarrelQuantities q;
  q.volume = pi4 / 4.0;
  q.perimeter = 2.0 * pi4;
  q.cone_inside = 4.0 / 7.0 * std::numbers::sqrt2 * pi4;
  q.defect = defect(q.perimeter, q.cone_inside, q.volume);
  return q;
}

/// Closed form of the barrel defect, 8^{1/4} √π (4 − 8√2/7).
inline double barrel_defect_closed_form() {
  return std::pow(8.0, 0.25) * std::sqrt(std::numbers::pi) *
         (4.0 - 8.0 * std::numbers::sqrt2 / 7.0);
}

/// Isoperimetric ratio of a ball in R^8: 8√π / 24^{1/8}.
inline double ball_defect() {
  return 8.0 * std::sqrt(std::numbers::pi) / std::pow(24.0, 1.0 / 8.0);
}

}  // namespace isopart

#endif  // ISOPART_EXACT_GEOMETRY_HPP_
