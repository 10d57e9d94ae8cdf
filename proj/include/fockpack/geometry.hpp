#pragma once

// Planar primitives: points, finite point sets with a uniform-grid index,
// disks, rectangular regions, and the separation / covering computations
// built on top of them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fockpack {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(Point a, Point b);

/// Axis-aligned rectangle. Aggregate so it can also describe degenerate
/// bounding boxes; operations that need a proper region call validate().
struct Region {
  double xmin = 0.0;
  double xmax = 0.0;
  double ymin = 0.0;
  double ymax = 0.0;

  /// Square of side `side` centered at the origin.
  static Region centered(double side);

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool is_valid() const;
  void validate() const;  // throws InvalidInput
  bool contains(Point p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
  bool contains(const Region& other) const {
    return other.xmin >= xmin && other.xmax <= xmax && other.ymin >= ymin &&
           other.ymax <= ymax;
  }
  Region expanded(double margin) const {
    return {xmin - margin, xmax + margin, ymin - margin, ymax + margin};
  }

  friend bool operator==(const Region&, const Region&) = default;
};

/// Sample spacing for scans over a Region.
struct GridSpec {
  double step = 0.0;

  /// step > 0 and step < half the shorter side of `region`.
  void validate_for(const Region& region) const;
  /// Sample points xmin, xmin + step, ... with the far edge always included.
  std::vector<Point> samples(const Region& region) const;
};

class Disk {
 public:
  Disk(Point center, double radius);

  Point center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Point center_;
  double radius_;
};

enum class Boundary { open, closed };

/// Finite set of pairwise distinct, finite points with a uniform grid index.
///
/// The grid covers the bounding box with square cells of side h, where h is
/// the square root of (bounding-box area / count). Cells are half-open
/// [x0, x0 + h) x [y0, y0 + h) and together cover the bounding box.
class PointSet {
 public:
  PointSet() = default;
  /// Throws InvalidInput on non-finite coordinates or duplicate points.
  explicit PointSet(std::vector<Point> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Bounding box; degenerate (zero width or height) for collinear input.
  /// Throws InvalidInput when the set is empty.
  Region bounding_box() const;

  double cell_side() const { return cell_; }
  std::size_t cells_x() const { return nx_; }
  std::size_t cells_y() const { return ny_; }
  /// Rectangle owned by cell (ix, iy).
  Region cell_region(std::size_t ix, std::size_t iy) const;
  /// Indices of the points stored in cell (ix, iy).
  std::span<const std::uint32_t> cell_points(std::size_t ix, std::size_t iy) const;

  /// Number of points with |p - c| < r (open) or <= r (closed).
  std::size_t count_within(Point center, double radius, Boundary boundary) const;

  /// Distance from q to the nearest point, skipping index `skip` if given.
  /// Requires at least one eligible point.
  double nearest_distance(Point q, std::optional<std::size_t> skip = {}) const;

 private:
  void build_index();
  std::int64_t cell_coord_x(double x) const;
  std::int64_t cell_coord_y(double y) const;

  std::vector<Point> points_;
  double x0_ = 0.0;
  double y0_ = 0.0;
  double cell_ = 1.0;
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<std::uint32_t> cell_start_;  // CSR offsets, size nx*ny + 1
  std::vector<std::uint32_t> cell_items_;
};

/// Minimum pairwise Euclidean distance. Throws InvalidInput ("separation
/// undefined") for fewer than two points.
double min_separation(const PointSet& ps);

/// Number of points strictly inside d (B(z, r) is open).
std::size_t count_in_disk(const PointSet& ps, const Disk& d);

struct CoveringScan {
  double radius = 0.0;  // max over samples of the nearest-point distance
  Point deepest;        // sample attaining it
  std::size_t samples = 0;
};

/// Grid scan of the covering radius over `region`. A lower estimate of the
/// true covering radius; the true value exceeds it by at most
/// grid.step * sqrt(2) / 2.
CoveringScan covering_scan(const PointSet& ps, const Region& region, const GridSpec& grid);
double covering_radius(const PointSet& ps, const Region& region, const GridSpec& grid);

/// Half a grid-cell diagonal: the slack between a grid scan and the true
/// covering radius.
double grid_margin(const GridSpec& grid);

struct CoveringCheck {
  bool covered = false;
  double covering_radius = 0.0;  // grid estimate
  double margin = 0.0;           // grid_margin(grid)
  std::optional<Point> witness;  // deepest grid point when not certified
};

/// Conservative covering test: covered only if covering_radius + margin <= sigma.
CoveringCheck is_covering(const PointSet& ps, double sigma, const Region& region,
                          const GridSpec& grid);

}  // namespace fockpack
