#ifndef ISOPART_GRID_PARTITION_HPP_
#define ISOPART_GRID_PARTITION_HPP_

/*!
 * \file
 * \brief Labelled uniform grids over a quadrant window: discrete Caccioppoli
 *        partitions with cell volumes and edge-counted interface perimeters.
 */

#include <cmath>
#include <concepts>
#include <cstdint>
#include <vector>

#include "isopart/errors.hpp"
#include "isopart/reduced_plane.hpp"

namespace isopart {

struct Window {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;

  [[nodiscard]] double width() const { return x1 - x0; }
  [[nodiscard]] double height() const { return y1 - y0; }
  friend bool operator==(const Window&, const Window&) = default;
};

enum class WeightMode { weighted, unweighted };

/// resolution × resolution cells; labels are 1-based region indices stored
/// row-major with row 0 at y0.
class GridPartition {
 public:
  GridPartition(Window window, int resolution, int num_regions, WeightMode mode,
                std::vector<int> labels)
      : window_(window), resolution_(resolution), num_regions_(num_regions),
        mode_(mode), labels_(std::move(labels)) {
    detail::require(resolution_ > 0, "GridPartition: resolution must be positive");
    detail::require(num_regions_ >= 1, "GridPartition: need at least one region");
    detail::require(window_.width() > 0.0 && window_.height() > 0.0,
                    "GridPartition: empty window");
    detail::require(mode_ == WeightMode::unweighted ||
                        (window_.x0 >= 0.0 && window_.y0 >= 0.0),
                    "GridPartition: weighted window must lie in the quadrant");
    detail::require(labels_.size() == static_cast<std::size_t>(resolution_) *
                                          static_cast<std::size_t>(resolution_),
                    "GridPartition: label count does not match resolution");
    for (int l : labels_) {
      detail::require(l >= 1 && l <= num_regions_,
                      "GridPartition: label out of range");
    }
  }

  /// Labels each cell by evaluating `label_at` at its center.
  template <std::invocable<Point> F>
  static GridPartition from_function(Window window, int resolution,
                                     int num_regions, WeightMode mode,
                                     F&& label_at) {
    detail::require(resolution > 0, "GridPartition: resolution must be positive");
    std::vector<int> labels(static_cast<std::size_t>(resolution) * resolution);
    const double dx = window.width() / resolution;
    const double dy = window.height() / resolution;
    for (int j = 0; j < resolution; ++j) {
      for (int i = 0; i < resolution; ++i) {
        const Point c{window.x0 + (i + 0.5) * dx, window.y0 + (j + 0.5) * dy};
        labels[static_cast<std::size_t>(j) * resolution + i] = label_at(c);
      }
    }
    return GridPartition(window, resolution, num_regions, mode, std::move(labels));
  }

  [[nodiscard]] const Window& window() const { return window_; }
  [[nodiscard]] int resolution() const { return resolution_; }
  [[nodiscard]] int num_regions() const { return num_regions_; }
  [[nodiscard]] WeightMode weight_mode() const { return mode_; }
  [[nodiscard]] const std::vector<int>& labels() const { return labels_; }
  [[nodiscard]] double dx() const { return window_.width() / resolution_; }
  [[nodiscard]] double dy() const { return window_.height() / resolution_; }

  [[nodiscard]] int label(int i, int j) const {
    return labels_[static_cast<std::size_t>(j) * resolution_ + i];
  }
  void set_label(int i, int j, int value) {
    detail::require(value >= 1 && value <= num_regions_,
                    "GridPartition: label out of range");
    labels_[static_cast<std::size_t>(j) * resolution_ + i] = value;
  }

  [[nodiscard]] Point cell_center(int i, int j) const {
    return {window_.x0 + (i + 0.5) * dx(), window_.y0 + (j + 0.5) * dy()};
  }

  /// Measure density at a point: 4π⁴x³y³ when weighted, 1 otherwise.
  [[nodiscard]] double density(Point p) const {
    return mode_ == WeightMode::weighted ? kReductionFactor * weight(p.x, p.y)
                                         : 1.0;
  }

  [[nodiscard]] double cell_measure(int i, int j) const {
    return density(cell_center(i, j)) * dx() * dy();
  }

  [[nodiscard]] bool same_layout(const GridPartition& other) const {
    return window_ == other.window_ && resolution_ == other.resolution_ &&
           num_regions_ == other.num_regions_ && mode_ == other.mode_;
  }

 private:
  Window window_;
  int resolution_;
  int num_regions_;
  WeightMode mode_;
  std::vector<int> labels_;
};

/// Calls f(cell_a, cell_b, edge_midpoint, edge_length, normal) for every
/// interior edge; cells are (i, j) pairs and the normal points from a to b.
template <typename F>
void for_each_interior_edge(const GridPartition& p, F&& f) {
  const int n = p.resolution();
  const double dx = p.dx();
  const double dy = p.dy();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Point c = p.cell_center(i, j);
      if (i + 1 < n) f(i, j, i + 1, j, Point{c.x + 0.5 * dx, c.y}, dy, Point{1.0, 0.0});
      if (j + 1 < n) f(i, j, i, j + 1, Point{c.x, c.y + 0.5 * dy}, dx, Point{0.0, 1.0});
    }
  }
}

struct RegionMeasure {
  double volume = 0.0;
  double perimeter = 0.0;
};

struct GridMeasures {
  std::vector<RegionMeasure> regions;  // regions[k - 1] is region k
  double total_perimeter = 0.0;        // ½ Σ_k Per(E_k)
};

inline GridMeasures grid_measures(const GridPartition& p) {
  GridMeasures out;
  out.regions.assign(static_cast<std::size_t>(p.num_regions()), {});
  const int n = p.resolution();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      out.regions[p.label(i, j) - 1].volume += p.cell_measure(i, j);
    }
  }
  for_each_interior_edge(p, [&](int ia, int ja, int ib, int jb, Point mid,
                                double len, Point) {
    const int la = p.label(ia, ja);
    const int lb = p.label(ib, jb);
    if (la == lb) return;
    const double m = len * p.density(mid);
    out.regions[la - 1].perimeter += m;
    out.regions[lb - 1].perimeter += m;
  });
  double sum = 0.0;
  for (const auto& r : out.regions) sum += r.perimeter;
  out.total_perimeter = 0.5 * sum;
  return out;
}

struct Annulus {
  double r_inner = 0.0;
  double r_outer = 0.0;
  Point center{};

  [[nodiscard]] bool contains(Point p) const {
    const double r = distance(p, center);
    return r >= r_inner && r < r_outer;
  }
};

/// ‖m((E △ F) ∩ annulus)‖₁ over all regions, with cells assigned to the
/// annulus by their centers. A cell whose labels differ lies in E_k △ F_k for
/// exactly two k, so it is counted twice.
inline double symmetric_difference_mass(const GridPartition& p,
                                        const GridPartition& q,
                                        const Annulus& annulus) {
  detail::require(p.same_layout(q),
                  "symmetric_difference_mass: grids do not share a layout");
  detail::require(annulus.r_inner < annulus.r_outer,
                  "symmetric_difference_mass: need r_inner < r_outer");
  double mass = 0.0;
  const int n = p.resolution();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (p.label(i, j) == q.label(i, j)) continue;
      if (!annulus.contains(p.cell_center(i, j))) continue;
      mass += 2.0 * p.cell_measure(i, j);
    }
  }
  return mass;
}

}  // namespace isopart

#endif  // ISOPART_GRID_PARTITION_HPP_
