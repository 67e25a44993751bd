#ifndef ISOPART_PARTITION_OPS_HPP_
#define ISOPART_PARTITION_OPS_HPP_

/*!
 * \file
 * \brief Glueing two grid partitions across a sphere, and sorted per-cube
 *        mass profiles of a region.
 *
 * Glued partition G_ρ takes F inside B_ρ(center) and E outside. Its new
 * interface on ∂B_ρ sits where E and F disagree; on the grid it is the set
 * of edges crossing the circle, each weighted by length × |ν·r̂| (the
 * projection onto the circle) × density × ½([E≠F] at the inner cell +
 * [E≠F] at the outer cell). Averaged over ρ ∈ (r, R) this equals
 * ‖m((E △ F) ∩ annulus)‖₁ / (2(R − r)) up to O(cell size).
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "isopart/errors.hpp"
#include "isopart/grid_partition.hpp"
#include "isopart/reduced_plane.hpp"

namespace isopart {

struct GlueResult {
  double rho = 0.0;
  double slice_perimeter = 0.0;
  double bound = 0.0;
  double average_slice = 0.0;  // exact mean of the slice function over (r, R)
};

/// Thrown when even the best radius exceeds the bound beyond the slack.
class GlueingError : public ConvergenceError {
 public:
  GlueingError(const std::string& what, GlueResult best)
      : ConvergenceError(what), best_(best) {}
  [[nodiscard]] const GlueResult& best() const { return best_; }

 private:
  GlueResult best_;
};

namespace detail {

struct SliceEvent {
  double radius;
  double delta;
};

}  // namespace detail

/// Slice perimeter as a piecewise-constant function of ρ, swept exactly; the
/// returned ρ is the midpoint of the first piece attaining the minimum.
inline GlueResult glueing_radius(const GridPartition& E, const GridPartition& F,
                                 Point center, double r, double R,
                                 double relative_slack = -1.0) {
  detail::require(E.same_layout(F), "glueing_radius: grids do not share a layout");
  detail::require(0.0 <= r && r < R, "glueing_radius: need 0 <= r < R");
  const Window& w = E.window();
  detail::require(center.x - R >= w.x0 && center.x + R <= w.x1 &&
                      center.y - R >= w.y0 && center.y + R <= w.y1,
                  "glueing_radius: annulus does not fit in the window");
  if (relative_slack < 0.0) relative_slack = 5.0 / E.resolution();

  GlueResult out;
  out.bound = symmetric_difference_mass(E, F, Annulus{r, R, center}) / (2.0 * (R - r));

  std::vector<detail::SliceEvent> events;
  double integral = 0.0;
  for_each_interior_edge(E, [&](int ia, int ja, int ib, int jb, Point mid,
                                double len, Point normal) {
    const bool diff_a = E.label(ia, ja) != F.label(ia, ja);
    const bool diff_b = E.label(ib, jb) != F.label(ib, jb);
    if (!diff_a && !diff_b) return;
    const double da = distance(E.cell_center(ia, ja), center);
    const double db = distance(E.cell_center(ib, jb), center);
    if (da == db) return;
    const double lo = std::max(std::min(da, db), r);
    const double hi = std::min(std::max(da, db), R);
    if (hi <= lo) return;
    const Point radial = mid - center;
    const double rn = norm(radial);
    const double projection = rn > 0.0 ? std::abs(dot(normal, radial)) / rn : 0.0;
    const double value = len * projection * E.density(mid) *
                         0.5 * (static_cast<double>(diff_a) + static_cast<double>(diff_b));
    if (value == 0.0) return;
    integral += value * (hi - lo);
    events.push_back({lo, value});
    events.push_back({hi, -value});
  });
  out.average_slice = integral / (R - r);

  std::sort(events.begin(), events.end(),
            [](const auto& a, const auto& b) { return a.radius < b.radius; });
  double best = std::numeric_limits<double>::infinity();
  double best_rho = 0.5 * (r + R);
  double current = 0.0;
  double piece_start = r;
  std::size_t k = 0;
  while (true) {
    // Apply every event at piece_start, then the piece runs to the next one.
    while (k < events.size() && events[k].radius <= piece_start) current += events[k++].delta;
    const double piece_end = k < events.size() ? events[k].radius : R;
    const double level = std::max(current, 0.0);
    if (piece_end > piece_start && level < best) {
      best = level;
      best_rho = 0.5 * (piece_start + piece_end);
    }
    if (k >= events.size()) break;
    piece_start = piece_end;
  }
  out.rho = best_rho;
  out.slice_perimeter = best;
  if (out.slice_perimeter > out.bound * (1.0 + relative_slack)) {
    throw GlueingError("glueing_radius: no radius satisfies the slice bound "
                       "(resolution too coarse?)", out);
  }
  return out;
}

struct ConcentrationProfile {
  double cube_size = 0.0;
  std::vector<double> sorted_masses;  // nonincreasing
  std::vector<double> tail_sums;      // tail_sums[n] = Σ_{j>=n}, one extra 0 at the end
  double total_mass = 0.0;
  double total_perimeter = 0.0;
};

/// Per-cube masses of one region, sorted nonincreasing, with tail sums.
inline ConcentrationProfile concentration_profile(const GridPartition& E, int region,
                                                  double cube_size) {
  detail::require(region >= 1 && region <= E.num_regions(),
                  "concentration_profile: region out of range");
  detail::require(cube_size > 0.0, "concentration_profile: cube size must be positive");
  const Window& w = E.window();
  auto whole = [](double q) {
    const double n = std::round(q);
    return std::abs(q - n) <= 1e-9 * std::max(1.0, q) ? static_cast<long>(n) : -1L;
  };
  const long cubes_x = whole(w.width() / cube_size);
  const long cubes_y = whole(w.height() / cube_size);
  const long cells_x = whole(cube_size / E.dx());
  const long cells_y = whole(cube_size / E.dy());
  detail::require(cubes_x > 0 && cubes_y > 0 && cells_x > 0 && cells_y > 0,
                  "concentration_profile: cube size must tile the window and the grid");

  std::vector<double> masses(static_cast<std::size_t>(cubes_x * cubes_y), 0.0);
  const int n = E.resolution();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (E.label(i, j) != region) continue;
      const long cube = (j / cells_y) * cubes_x + (i / cells_x);
      masses[static_cast<std::size_t>(cube)] += E.cell_measure(i, j);
    }
  }
  ConcentrationProfile prof;
  prof.cube_size = cube_size;
  std::sort(masses.begin(), masses.end(), std::greater<>());
  prof.tail_sums.assign(masses.size() + 1, 0.0);
  for (std::size_t k = masses.size(); k-- > 0;) {
    prof.tail_sums[k] = prof.tail_sums[k + 1] + masses[k];
  }
  prof.total_mass = prof.tail_sums.front();
  prof.total_perimeter = grid_measures(E).regions[region - 1].perimeter;
  prof.sorted_masses = std::move(masses);
  return prof;
}

}  // namespace isopart

#endif  // ISOPART_PARTITION_OPS_HPP_
