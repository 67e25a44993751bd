#ifndef ISOPART_ORACLES_HPP_
#define ISOPART_ORACLES_HPP_

/*!
 * \file
 * \brief Quadrature of the defining integrals of the lens and barrel
 *        measures, independent of the closed forms in exact_geometry.hpp.
 *
 * Unit-ball volumes are built by slicing, ω_d = ω_{d−1} ∫_{−1}^{1} (1−t²)^{(d−1)/2} dt,
 * and sphere areas from H^{d−1}(S^{d−1}) = d ω_d.
 */

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace isopart::oracle {

template <typename F>
double integrate(F&& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 10, 1e-13);
}

inline double ball_volume(int d) {
  double omega = 1.0;  // ω_0
  for (int k = 1; k <= d; ++k) {
    // t = sin φ turns (1−t²)^{(k−1)/2} dt into cos^k φ dφ.
    omega *= integrate([k](double phi) { return std::pow(std::cos(phi), k); },
                       -std::numbers::pi / 2.0, std::numbers::pi / 2.0);
  }
  return omega;
}

/// H^{d−1}(S^{d−1}).
inline double sphere_area(int d) { return d * ball_volume(d); }

/// |L_1| by slicing along e_8: 2 ω_7 ∫_{1/2}^1 (1−y²)^{7/2} dy.
inline double lens_volume() {
  return 2.0 * ball_volume(7) *
         integrate([](double y) { return std::pow(1.0 - y * y, 3.5); }, 0.5, 1.0);
}

/// |L_1| in the angular form 2 ω_7 ∫_0^{π/3} sin⁸θ dθ.
inline double lens_volume_angular() {
  return 2.0 * ball_volume(7) *
         integrate([](double t) { return std::pow(std::sin(t), 8); }, 0.0, std::numbers::pi / 3.0);
}

/// Per(L_1): two spherical caps of polar angle π/3, each H⁶(S⁶) ∫ sin⁶θ dθ.
inline double lens_perimeter() {
  return 2.0 * sphere_area(7) *
         integrate([](double t) { return std::pow(std::sin(t), 6); }, 0.0, std::numbers::pi / 3.0);
}

/// Per(H, L_1): the flat 7-disk of radius √3/2, ∫ H⁶(S⁶) r⁶ dr.
inline double lens_plane_inside() {
  const double s6 = sphere_area(7);
  return integrate([s6](double r) { return s6 * std::pow(r, 6); }, 0.0, std::numbers::sqrt3 / 2.0);
}

/// |B⁴|, by integrating spherical shells ∫_0^1 H³(S³) r³ dr.
inline double unit_four_ball() {
  const double s3 = sphere_area(4);
  return integrate([s3](double r) { return s3 * r * r * r; }, 0.0, 1.0);
}

inline double barrel_volume() {
  const double b4 = unit_four_ball();
  return b4 * b4;
}

/// Per(Q_1) = Per(S³ × B⁴) + Per(B⁴ × S³).
inline double barrel_perimeter() { return 2.0 * sphere_area(4) * unit_four_ball(); }

/// Per(S_2, Q_1) = H³(S³)² ∫_0^1 t⁶ √2 dt.
inline double barrel_cone_inside() {
  const double s3 = sphere_area(4);
  return s3 * s3 *
         integrate([](double t) { return std::pow(t, 6) * std::numbers::sqrt2; }, 0.0, 1.0);
}

}  // namespace isopart::oracle

#endif  // ISOPART_ORACLES_HPP_
