#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "isopart/exact_geometry.hpp"
#include "isopart/fixtures.hpp"
#include "isopart/grid_partition.hpp"
#include "isopart/monte_carlo.hpp"
#include "test_support.hpp"

namespace isopart {
namespace {

using testing::rel_err;
const double pi4 = std::pow(std::numbers::pi, 4);

GridPartition uniform(int res, int label, int regions = 3) {
  return GridPartition({0, 0, 1, 1}, res, regions, WeightMode::unweighted,
                       std::vector<int>(static_cast<std::size_t>(res) * res, label));
}

TEST(GridPartition, Validation) {
  EXPECT_THROW(GridPartition({0, 0, 1, 1}, 0, 3, WeightMode::unweighted, {}), PreconditionError);
  EXPECT_THROW(GridPartition({0, 0, 1, 1}, 2, 3, WeightMode::unweighted, {1, 2, 3}), PreconditionError);
  EXPECT_THROW(GridPartition({0, 0, 1, 1}, 2, 3, WeightMode::unweighted, {1, 2, 3, 4}), PreconditionError);
  EXPECT_THROW(GridPartition({0, 0, 1, 1}, 2, 3, WeightMode::unweighted, {0, 1, 1, 1}), PreconditionError);
  EXPECT_THROW(GridPartition({-1, 0, 1, 1}, 2, 3, WeightMode::weighted, {1, 1, 1, 1}), PreconditionError);
  EXPECT_THROW(GridPartition({0, 0, 0, 1}, 2, 3, WeightMode::unweighted, {1, 1, 1, 1}), PreconditionError);
  auto p = uniform(4, 1);
  EXPECT_THROW(p.set_label(0, 0, 4), PreconditionError);
}

TEST(GridPartition, LayoutAndCells) {
  auto p = uniform(4, 2);
  EXPECT_EQ(p.label(3, 2), 2);
  p.set_label(3, 2, 1);
  EXPECT_EQ(p.label(3, 2), 1);
  EXPECT_EQ(p.labels()[2 * 4 + 3], 1);
  EXPECT_DOUBLE_EQ(p.cell_center(0, 0).x, 0.125);
  EXPECT_DOUBLE_EQ(p.cell_measure(1, 1), 1.0 / 16.0);
}

TEST(GridMeasures, UniformLabelsHaveNoPerimeter) {
  const auto m = grid_measures(uniform(32, 2));
  EXPECT_EQ(m.total_perimeter, 0.0);
  EXPECT_DOUBLE_EQ(m.regions[1].volume, 1.0);
  EXPECT_EQ(m.regions[0].volume, 0.0);
}

TEST(GridMeasures, UnweightedVerticalCut) {
  const auto p = GridPartition::from_function({0, 0, 1, 1}, 64, 2, WeightMode::unweighted,
                                              [](Point c) { return c.x < 0.5 ? 1 : 2; });
  const auto m = grid_measures(p);
  EXPECT_NEAR(m.total_perimeter, 1.0, 1e-12);
  EXPECT_NEAR(m.regions[0].perimeter, 1.0, 1e-12);
  EXPECT_NEAR(m.regions[0].volume, 0.5, 1e-12);
}

TEST(GridMeasures, UnweightedDiagonalStaircase) {
  // A staircase has the L¹ length of the diagonal, not its Euclidean length.
  const auto p = GridPartition::from_function({0, 0, 1, 1}, 64, 2, WeightMode::unweighted,
                                              [](Point c) { return c.y < c.x ? 1 : 2; });
  EXPECT_NEAR(grid_measures(p).total_perimeter, 2.0, 1.0 / 32.0);
}

TEST(GridMeasures, BarrelSquareOnAlignedGrids) {
  for (int res : {768, 1536}) {
    const auto m = grid_measures(fixtures::barrel(res));
    EXPECT_LT(rel_err(m.regions[0].volume, barrel_quantities().volume), 5e-3) << res;
    EXPECT_LT(rel_err(m.regions[0].perimeter, barrel_quantities().perimeter), 5e-3) << res;
  }
}

TEST(GridMeasures, BarrelVolumeConverges) {
  const double exact = pi4 / 4.0;
  std::vector<double> err;
  for (int res : {192, 384, 768}) {
    err.push_back(std::abs(grid_measures(fixtures::barrel(res)).regions[0].volume - exact));
  }
  EXPECT_LE(err[1], 1.1 * err[0]);
  EXPECT_LE(err[2], 1.1 * err[1]);
}

TEST(GridMeasures, HalfSumIdentityProperty) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto [e, f] = fixtures::random_voronoi_pair(seed, 96);
    const auto m = grid_measures(e);
    double sum = 0.0, vol = 0.0;
    for (const auto& r : m.regions) {
      sum += r.perimeter;
      vol += r.volume;
    }
    EXPECT_NEAR(m.total_perimeter, 0.5 * sum, 1e-12);
    EXPECT_NEAR(vol, 1.0, 1e-12);
    // No region is more than the rest combined along its boundary.
    for (const auto& r : m.regions) EXPECT_LE(r.perimeter, sum - r.perimeter + 1e-12);
    (void)f;
  }
}

TEST(Annulus, HalfOpen) {
  const Annulus a{1.0, 2.0, {0.0, 0.0}};
  EXPECT_TRUE(a.contains({1.0, 0.0}));
  EXPECT_FALSE(a.contains({2.0, 0.0}));
  EXPECT_FALSE(a.contains({0.5, 0.0}));
}

TEST(SymmetricDifference, IdenticalIsZero) {
  const auto [e, f] = fixtures::random_voronoi_pair(3, 64);
  EXPECT_EQ(symmetric_difference_mass(e, e, {0.0, 1.0, {0.5, 0.5}}), 0.0);
}

TEST(SymmetricDifference, SwappedLabelsCountTwice) {
  const auto p = GridPartition::from_function({0, 0, 1, 1}, 64, 2, WeightMode::unweighted,
                                              [](Point c) { return c.x < 0.5 ? 1 : 2; });
  const auto q = GridPartition::from_function({0, 0, 1, 1}, 64, 2, WeightMode::unweighted,
                                              [](Point c) { return c.x < 0.5 ? 2 : 1; });
  EXPECT_NEAR(symmetric_difference_mass(p, q, {0.0, 10.0, {0.0, 0.0}}), 2.0, 1e-12);
}

TEST(SymmetricDifference, RandomNoiseMatchesExpectation) {
  constexpr int res = 256;
  constexpr double eps = 0.1;
  const Annulus ann{0.1, 0.4, {0.5, 0.5}};
  const auto p = uniform(res, 1, 2);
  auto q = p;
  const CounterRng rng(17);
  double ann_area = 0.0;
  int in_cells = 0;
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      if (rng.uniform(static_cast<std::uint64_t>(j) * res + i) < eps) q.set_label(i, j, 2);
      if (ann.contains(p.cell_center(i, j))) {
        ann_area += p.cell_measure(i, j);
        ++in_cells;
      }
    }
  }
  const double cell = 1.0 / (res * res);
  const double expected = 2.0 * eps * ann_area;
  const double sigma = 2.0 * cell * std::sqrt(in_cells * eps * (1 - eps));
  EXPECT_NEAR(symmetric_difference_mass(p, q, ann), expected, 3.0 * sigma);
}

TEST(SymmetricDifference, Errors) {
  const auto a = uniform(16, 1);
  const auto b = uniform(32, 1);
  EXPECT_THROW(symmetric_difference_mass(a, b, {0.0, 1.0, {0, 0}}), PreconditionError);
  EXPECT_THROW(symmetric_difference_mass(a, a, {1.0, 1.0, {0, 0}}), PreconditionError);
}

TEST(EdgeIteration, CountsInteriorEdges) {
  const auto p = uniform(10, 1);
  int count = 0;
  for_each_interior_edge(p, [&](int, int, int ib, int jb, Point, double len, Point n) {
    ++count;
    EXPECT_DOUBLE_EQ(len, 0.1);
    EXPECT_DOUBLE_EQ(norm(n), 1.0);
    EXPECT_LT(ib, 10);
    EXPECT_LT(jb, 10);
  });
  EXPECT_EQ(count, 2 * 10 * 9);
}

}  // namespace
}  // namespace isopart
