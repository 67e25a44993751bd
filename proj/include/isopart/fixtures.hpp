#ifndef ISOPART_FIXTURES_HPP_
#define ISOPART_FIXTURES_HPP_

// Deterministic grid partitions used by the diagnostics, tests and CLI.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "isopart/grid_partition.hpp"
#include "isopart/monte_carlo.hpp"

namespace isopart::fixtures {

/// Three-label Voronoi partition of [0,1]² and a jittered copy of it.
inline std::pair<GridPartition, GridPartition> random_voronoi_pair(
    std::uint64_t seed, int resolution, int sites = 16, double jitter = 0.05) {
  const CounterRng rng(seed);
  std::vector<Point> e_sites, f_sites;
  for (int k = 0; k < sites; ++k) {
    const Point p{rng.uniform(4 * k), rng.uniform(4 * k + 1)};
    e_sites.push_back(p);
    f_sites.push_back({p.x + jitter * (2.0 * rng.uniform(4 * k + 2) - 1.0),
                       p.y + jitter * (2.0 * rng.uniform(4 * k + 3) - 1.0)});
  }
  auto nearest = [sites](const std::vector<Point>& s) {
    return [&s, sites](Point c) {
      int best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (int k = 0; k < sites; ++k) {
        const double d = distance(c, s[k]);
        if (d < bd) {
          bd = d;
          best = k;
        }
      }
      return best % 3 + 1;
    };
  };
  const Window unit{0.0, 0.0, 1.0, 1.0};
  return {GridPartition::from_function(unit, resolution, 3, WeightMode::unweighted, nearest(e_sites)),
          GridPartition::from_function(unit, resolution, 3, WeightMode::unweighted, nearest(f_sites))};
}

inline constexpr Window kProfileWindow{0.0, 0.0, 16.0, 16.0};

/// Region 1 is the single unit cube [8,9]².
inline GridPartition one_cube(int resolution = 512) {
  return GridPartition::from_function(kProfileWindow, resolution, 2, WeightMode::unweighted,
                                      [](Point c) {
                                        return (c.x > 8 && c.x < 9 && c.y > 8 && c.y < 9) ? 1 : 2;
                                      });
}

/// Region 1 is the strip [0,16] × [8, 8 + thickness], of mass 16·thickness.
inline GridPartition slab(int resolution = 512, double thickness = 0.25) {
  return GridPartition::from_function(kProfileWindow, resolution, 2, WeightMode::unweighted,
                                      [thickness](Point c) {
                                        return (c.y > 8 && c.y < 8 + thickness) ? 1 : 2;
                                      });
}

/// Region 1 is the disk about (8, 8) with the given area.
inline GridPartition blob(int resolution = 512, double area = 4.0) {
  const double radius = std::sqrt(area / std::numbers::pi);
  return GridPartition::from_function(kProfileWindow, resolution, 2, WeightMode::unweighted,
                                      [radius](Point c) {
                                        return distance(c, {8.0, 8.0}) < radius ? 1 : 2;
                                      });
}

/// Square [0,1]² as region 1, the rest split by the diagonal (2 above).
inline GridPartition barrel(int resolution, Window window = {0.0, 0.0, 3.0, 3.0}) {
  return GridPartition::from_function(window, resolution, 3, WeightMode::weighted, [](Point c) {
    if (c.x < 1.0 && c.y < 1.0) return 1;
    return c.y >= c.x ? 2 : 3;
  });
}

}  // namespace isopart::fixtures

#endif  // ISOPART_FIXTURES_HPP_
