#include "fockpack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include "fockpack/errors.hpp"

namespace fockpack {

namespace {

// Brute force is faster than the index below this size and doubles as the
// exhaustive fallback for min_separation.
constexpr std::size_t kBruteForceLimit = 64;

// Relative slack for the whole-cell shortcut in count_within; any cell whose
// farthest corner is this close to the circle is scanned point by point.
constexpr double kCellShortcutSlack = 1e-12;

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    const auto hx = std::hash<double>{}(p.x);
    const auto hy = std::hash<double>{}(p.y);
    return hx ^ (hy + 0x9e3779b97f4a7c15ULL + (hx << 6) + (hx >> 2));
  }
};

std::string describe(Point p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

}  // namespace

double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

// ---------------------------------------------------------------------------
// Region / GridSpec / Disk

Region Region::centered(double side) {
  const double h = side / 2.0;
  return {-h, h, -h, h};
}

bool Region::is_valid() const {
  return std::isfinite(xmin) && std::isfinite(xmax) && std::isfinite(ymin) &&
         std::isfinite(ymax) && xmin < xmax && ymin < ymax;
}

void Region::validate() const {
  if (!is_valid()) {
    throw InvalidInput("invalid region: need finite bounds with xmin < xmax and ymin < ymax");
  }
}

void GridSpec::validate_for(const Region& region) const {
  region.validate();
  if (!(std::isfinite(step) && step > 0.0)) {
    throw InvalidInput("grid step must be positive and finite");
  }
  const double shorter = std::min(region.width(), region.height());
  if (!(step < shorter / 2.0)) {
    throw InvalidInput("grid step " + std::to_string(step) +
                       " must be smaller than half the region's shorter side (" +
                       std::to_string(shorter) + ")");
  }
}

namespace {

std::vector<double> axis_samples(double lo, double hi, double step) {
  std::vector<double> out;
  const double span = hi - lo;
  const auto n = static_cast<std::size_t>(std::floor(span / step));
  out.reserve(n + 2);
  for (std::size_t i = 0; i <= n; ++i) {
    out.push_back(lo + static_cast<double>(i) * step);
  }
  if (out.back() < hi - 1e-12 * span) {
    out.push_back(hi);
  } else {
    out.back() = std::min(out.back(), hi);
  }
  return out;
}

}  // namespace

std::vector<Point> GridSpec::samples(const Region& region) const {
  validate_for(region);
  const auto xs = axis_samples(region.xmin, region.xmax, step);
  const auto ys = axis_samples(region.ymin, region.ymax, step);
  std::vector<Point> out;
  out.reserve(xs.size() * ys.size());
  for (double y : ys) {
    for (double x : xs) {
      out.push_back({x, y});
    }
  }
  return out;
}

Disk::Disk(Point center, double radius) : center_(center), radius_(radius) {
  if (!std::isfinite(center.x) || !std::isfinite(center.y)) {
    throw InvalidInput("disk center must be finite");
  }
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw InvalidInput("disk radius must be positive and finite");
  }
}

// ---------------------------------------------------------------------------
// PointSet

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidInput("point set too large");
  }
  std::unordered_set<Point, PointHash> seen;
  seen.reserve(points_.size());
  for (const auto& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidInput("point coordinates must be finite (NaN/Inf rejected)");
    }
    // -0.0 and 0.0 compare equal but hash differently.
    const Point key{p.x == 0.0 ? 0.0 : p.x, p.y == 0.0 ? 0.0 : p.y};
    if (!seen.insert(key).second) {
      throw InvalidInput("duplicate point " + describe(p));
    }
  }
  build_index();
}

Region PointSet::bounding_box() const {
  if (points_.empty()) {
    throw InvalidInput("bounding box of an empty point set");
  }
  Region box{points_[0].x, points_[0].x, points_[0].y, points_[0].y};
  for (const auto& p : points_) {
    box.xmin = std::min(box.xmin, p.x);
    box.xmax = std::max(box.xmax, p.x);
    box.ymin = std::min(box.ymin, p.y);
    box.ymax = std::max(box.ymax, p.y);
  }
  return box;
}

void PointSet::build_index() {
  cell_start_.clear();
  cell_items_.clear();
  nx_ = ny_ = 0;
  if (points_.empty()) return;

  const Region box = bounding_box();
  const double n = static_cast<double>(points_.size());
  const double w = box.width();
  const double h = box.height();
  x0_ = box.xmin;
  y0_ = box.ymin;
  if (w > 0.0 && h > 0.0) {
    cell_ = std::sqrt(w * h / n);
  } else if (std::max(w, h) > 0.0) {
    cell_ = std::max(w, h) / n;
  } else {
    cell_ = 1.0;
  }
  const double cap = 4.0 * n + 16.0;
  for (;;) {
    // Sized from the lookup itself so the far edge always lands in range.
    const auto cx = static_cast<double>(cell_coord_x(box.xmax) + 1);
    const auto cy = static_cast<double>(cell_coord_y(box.ymax) + 1);
    if (cx * cy <= cap) {
      nx_ = static_cast<std::size_t>(cx);
      ny_ = static_cast<std::size_t>(cy);
      break;
    }
    cell_ *= 2.0;
  }

  std::vector<std::size_t> owner(points_.size());
  std::vector<std::uint32_t> counts(nx_ * ny_, 0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto ix = static_cast<std::size_t>(cell_coord_x(points_[i].x));
    const auto iy = static_cast<std::size_t>(cell_coord_y(points_[i].y));
    owner[i] = iy * nx_ + ix;
    ++counts[owner[i]];
  }
  cell_start_.assign(nx_ * ny_ + 1, 0);
  for (std::size_t c = 0; c < counts.size(); ++c) {
    cell_start_[c + 1] = cell_start_[c] + counts[c];
  }
  cell_items_.resize(points_.size());
  std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    cell_items_[fill[owner[i]]++] = static_cast<std::uint32_t>(i);
  }
}

// Cell k owns [x0 + k*h, x0 + (k+1)*h). The floor estimate is corrected
// against those exact bounds so lookups agree with cell_region().
std::int64_t PointSet::cell_coord_x(double x) const {
  auto k = static_cast<std::int64_t>(std::floor((x - x0_) / cell_));
  if (x < x0_ + static_cast<double>(k) * cell_) --k;
  if (x >= x0_ + static_cast<double>(k + 1) * cell_) ++k;
  return k;
}

std::int64_t PointSet::cell_coord_y(double y) const {
  auto k = static_cast<std::int64_t>(std::floor((y - y0_) / cell_));
  if (y < y0_ + static_cast<double>(k) * cell_) --k;
  if (y >= y0_ + static_cast<double>(k + 1) * cell_) ++k;
  return k;
}

Region PointSet::cell_region(std::size_t ix, std::size_t iy) const {
  return {x0_ + static_cast<double>(ix) * cell_, x0_ + static_cast<double>(ix + 1) * cell_,
          y0_ + static_cast<double>(iy) * cell_, y0_ + static_cast<double>(iy + 1) * cell_};
}

std::span<const std::uint32_t> PointSet::cell_points(std::size_t ix, std::size_t iy) const {
  const std::size_t c = iy * nx_ + ix;
  return {cell_items_.data() + cell_start_[c], cell_start_[c + 1] - cell_start_[c]};
}

std::size_t PointSet::count_within(Point center, double radius, Boundary boundary) const {
  if (points_.empty() || radius < 0.0) return 0;
  const double r2 = radius * radius;
  const auto clamp_x = [&](std::int64_t k) {
    return std::clamp<std::int64_t>(k, 0, static_cast<std::int64_t>(nx_) - 1);
  };
  const auto clamp_y = [&](std::int64_t k) {
    return std::clamp<std::int64_t>(k, 0, static_cast<std::int64_t>(ny_) - 1);
  };
  const std::int64_t kx0 = cell_coord_x(center.x - radius);
  const std::int64_t kx1 = cell_coord_x(center.x + radius);
  const std::int64_t ky0 = cell_coord_y(center.y - radius);
  const std::int64_t ky1 = cell_coord_y(center.y + radius);
  if (kx1 < 0 || ky1 < 0 || kx0 >= static_cast<std::int64_t>(nx_) ||
      ky0 >= static_cast<std::int64_t>(ny_)) {
    return 0;
  }

  std::size_t count = 0;
  for (std::int64_t iy = clamp_y(ky0); iy <= clamp_y(ky1); ++iy) {
    for (std::int64_t ix = clamp_x(kx0); ix <= clamp_x(kx1); ++ix) {
      const auto items = cell_points(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy));
      if (items.empty()) continue;
      const Region cell = cell_region(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy));
      const double fx = std::max(std::abs(cell.xmin - center.x), std::abs(cell.xmax - center.x));
      const double fy = std::max(std::abs(cell.ymin - center.y), std::abs(cell.ymax - center.y));
      if (fx * fx + fy * fy < r2 * (1.0 - kCellShortcutSlack)) {
        count += items.size();
        continue;
      }
      const double nxd = std::max({cell.xmin - center.x, 0.0, center.x - cell.xmax});
      const double nyd = std::max({cell.ymin - center.y, 0.0, center.y - cell.ymax});
      if (nxd * nxd + nyd * nyd > r2 * (1.0 + kCellShortcutSlack)) continue;
      for (const auto i : items) {
        const double d2 = squared_distance(points_[i], center);
        if (boundary == Boundary::open ? d2 < r2 : d2 <= r2) ++count;
      }
    }
  }
  return count;
}

double PointSet::nearest_distance(Point q, std::optional<std::size_t> skip) const {
  const std::size_t eligible = points_.size() - (skip && *skip < points_.size() ? 1 : 0);
  if (eligible == 0) {
    throw InvalidInput("nearest-point query on a set without eligible points");
  }
  double best = std::numeric_limits<double>::infinity();
  const std::int64_t qx = cell_coord_x(q.x);
  const std::int64_t qy = cell_coord_y(q.y);
  const auto nx = static_cast<std::int64_t>(nx_);
  const auto ny = static_cast<std::int64_t>(ny_);

  const auto visit = [&](std::int64_t ix, std::int64_t iy) {
    if (ix < 0 || iy < 0 || ix >= nx || iy >= ny) return;
    for (const auto i : cell_points(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy))) {
      if (skip && i == *skip) continue;
      best = std::min(best, squared_distance(points_[i], q));
    }
  };

  const std::int64_t k_first =
      std::max({std::int64_t{0}, -qx, qx - (nx - 1), -qy, qy - (ny - 1)});
  const std::int64_t k_last =
      std::max({std::abs(qx), std::abs(qx - (nx - 1)), std::abs(qy), std::abs(qy - (ny - 1))});
  for (std::int64_t k = k_first; k <= k_last; ++k) {
    // Any cell on ring k is at least (k - 1) cells away from q.
    const double reach = static_cast<double>(k - 1) * cell_;
    if (k > 0 && reach > 0.0 && reach * reach >= best) break;
    if (k == 0) {
      visit(qx, qy);
      continue;
    }
    for (std::int64_t ix = qx - k; ix <= qx + k; ++ix) {
      visit(ix, qy - k);
      visit(ix, qy + k);
    }
    for (std::int64_t iy = qy - k + 1; iy <= qy + k - 1; ++iy) {
      visit(qx - k, iy);
      visit(qx + k, iy);
    }
  }
  return std::sqrt(best);
}

// ---------------------------------------------------------------------------
// Operations

double min_separation(const PointSet& ps) {
  if (ps.size() < 2) {
    throw InvalidInput("separation undefined: need at least 2 points");
  }
  double best2 = std::numeric_limits<double>::infinity();
  if (ps.size() <= kBruteForceLimit) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        best2 = std::min(best2, squared_distance(ps[i], ps[j]));
      }
    }
    return std::sqrt(best2);
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    best = std::min(best, ps.nearest_distance(ps[i], i));
  }
  return best;
}

std::size_t count_in_disk(const PointSet& ps, const Disk& d) {
  return ps.count_within(d.center(), d.radius(), Boundary::open);
}

CoveringScan covering_scan(const PointSet& ps, const Region& region, const GridSpec& grid) {
  if (ps.empty()) {
    throw InvalidInput("covering radius of an empty point set");
  }
  const auto samples = grid.samples(region);
  CoveringScan scan;
  scan.radius = -1.0;
  scan.samples = samples.size();
  for (const auto& q : samples) {
    const double d = ps.nearest_distance(q);
    if (d > scan.radius) {
      scan.radius = d;
      scan.deepest = q;
    }
  }
  return scan;
}

double covering_radius(const PointSet& ps, const Region& region, const GridSpec& grid) {
  return covering_scan(ps, region, grid).radius;
}

double grid_margin(const GridSpec& grid) { return grid.step * std::sqrt(2.0) / 2.0; }

CoveringCheck is_covering(const PointSet& ps, double sigma, const Region& region,
                          const GridSpec& grid) {
  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    throw InvalidInput("covering sigma must be positive and finite");
  }
  const auto scan = covering_scan(ps, region, grid);
  CoveringCheck out;
  out.covering_radius = scan.radius;
  out.margin = grid_margin(grid);
  out.covered = scan.radius + out.margin <= sigma;
  if (!out.covered) out.witness = scan.deepest;
  return out;
}

}  // namespace fockpack
