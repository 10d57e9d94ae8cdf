#include "fockpack/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

#include "fockpack/errors.hpp"

namespace fockpack {

namespace {

struct Basis {
  Point v1;
  Point v2;
};

Basis basis_for(const LatticeSpec& spec) {
  const double s = spec.spacing;
  const double c = std::cos(spec.rotation);
  const double sn = std::sin(spec.rotation);
  const auto rotate = [&](double x, double y) { return Point{c * x - sn * y, sn * x + c * y}; };
  if (spec.kind == LatticeKind::hexagonal) {
    return {rotate(s, 0.0), rotate(s * 0.5, s * std::numbers::sqrt3 / 2.0)};
  }
  return {rotate(s, 0.0), rotate(0.0, s)};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations so outputs are portable.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::string to_string(LatticeKind kind) {
  return kind == LatticeKind::hexagonal ? "hexagonal" : "square";
}

LatticeKind parse_lattice_kind(const std::string& text) {
  if (text == "hex" || text == "hexagonal") return LatticeKind::hexagonal;
  if (text == "square") return LatticeKind::square;
  throw InvalidInput("unknown lattice kind '" + text + "' (expected hex or square)");
}

void LatticeSpec::validate() const {
  if (!(std::isfinite(spacing) && spacing > 0.0)) {
    throw InvalidInput("lattice spacing must be positive and finite");
  }
  if (!std::isfinite(offset.x) || !std::isfinite(offset.y) || !std::isfinite(rotation)) {
    throw InvalidInput("lattice offset and rotation must be finite");
  }
}

double lattice_density(const LatticeSpec& spec) {
  spec.validate();
  const double s2 = spec.spacing * spec.spacing;
  return spec.kind == LatticeKind::hexagonal ? 2.0 / (std::numbers::sqrt3 * s2) : 1.0 / s2;
}

PointSet generate(const LatticeSpec& spec, const Region& region) {
  spec.validate();
  region.validate();
  const auto [v1, v2] = basis_for(spec);

  // Lattice coordinates (a, b) of the region corners under the inverse basis.
  const double det = v1.x * v2.y - v1.y * v2.x;
  const std::array<Point, 4> corners{{{region.xmin, region.ymin},
                                      {region.xmax, region.ymin},
                                      {region.xmin, region.ymax},
                                      {region.xmax, region.ymax}}};
  double amin = INFINITY, amax = -INFINITY, bmin = INFINITY, bmax = -INFINITY;
  for (const auto& c : corners) {
    const double px = c.x - spec.offset.x;
    const double py = c.y - spec.offset.y;
    const double a = (px * v2.y - py * v2.x) / det;
    const double b = (v1.x * py - v1.y * px) / det;
    amin = std::min(amin, a);
    amax = std::max(amax, a);
    bmin = std::min(bmin, b);
    bmax = std::max(bmax, b);
  }
  const auto a0 = static_cast<long long>(std::floor(amin)) - 2;
  const auto a1 = static_cast<long long>(std::ceil(amax)) + 2;
  const auto b0 = static_cast<long long>(std::floor(bmin)) - 2;
  const auto b1 = static_cast<long long>(std::ceil(bmax)) + 2;

  std::vector<Point> pts;
  for (long long b = b0; b <= b1; ++b) {
    for (long long a = a0; a <= a1; ++a) {
      const auto da = static_cast<double>(a);
      const auto db = static_cast<double>(b);
      const Point p{spec.offset.x + da * v1.x + db * v2.x, spec.offset.y + da * v1.y + db * v2.y};
      if (region.contains(p)) pts.push_back(p);
    }
  }
  return PointSet(std::move(pts));
}

PointSet lattice_patch(const LatticeSpec& spec, double radius_in_spacings) {
  if (!(std::isfinite(radius_in_spacings) && radius_in_spacings > 0.0)) {
    throw InvalidInput("patch radius must be positive and finite");
  }
  spec.validate();
  const double radius = radius_in_spacings * spec.spacing;
  const double reach = radius * (1.0 + 1e-9);
  const Region box{spec.offset.x - reach, spec.offset.x + reach, spec.offset.y - reach,
                   spec.offset.y + reach};
  std::vector<Point> kept;
  for (const auto& p : generate(spec, box)) {
    if (distance(p, spec.offset) <= reach) kept.push_back(p);
  }
  return PointSet(std::move(kept));
}

PointSet perturb(const PointSet& ps, double magnitude, std::uint64_t seed) {
  if (!(std::isfinite(magnitude) && magnitude >= 0.0)) {
    throw InvalidInput("perturbation magnitude must be finite and nonnegative");
  }
  if (magnitude == 0.0) return ps;

  constexpr int kMaxAttempts = 100;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(attempt) * 0x9e3779b97f4a7c15ULL));
    std::vector<Point> moved;
    moved.reserve(ps.size());
    for (const auto& p : ps) {
      const double r = magnitude * std::sqrt(unit_uniform(rng));
      const double theta = 2.0 * std::numbers::pi * unit_uniform(rng);
      moved.push_back({p.x + r * std::cos(theta), p.y + r * std::sin(theta)});
    }
    try {
      return PointSet(std::move(moved));
    } catch (const InvalidInput&) {
      // duplicate after displacement; redraw with the next sub-seed
    }
  }
  throw ComputationError("perturb: duplicate points after 100 attempts");
}

PointSet random_separated(const Region& region, double sigma, std::size_t attempts,
                          std::uint64_t seed) {
  region.validate();
  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    throw InvalidInput("separation must be positive and finite");
  }
  std::mt19937_64 rng(splitmix64(seed));
  const double s2 = sigma * sigma;
  const auto key = [&](Point p) {
    const auto ix = static_cast<std::int64_t>(std::floor((p.x - region.xmin) / sigma));
    const auto iy = static_cast<std::int64_t>(std::floor((p.y - region.ymin) / sigma));
    return std::pair{ix, iy};
  };
  const auto pack = [](std::int64_t ix, std::int64_t iy) {
    return (static_cast<std::uint64_t>(ix) << 32) ^ static_cast<std::uint64_t>(iy & 0xffffffff);
  };
  std::unordered_map<std::uint64_t, std::vector<Point>> cells;
  std::vector<Point> kept;
  for (std::size_t n = 0; n < attempts; ++n) {
    const Point c{region.xmin + region.width() * unit_uniform(rng),
                  region.ymin + region.height() * unit_uniform(rng)};
    const auto [ix, iy] = key(c);
    bool ok = true;
    for (std::int64_t dy = -1; dy <= 1 && ok; ++dy) {
      for (std::int64_t dx = -1; dx <= 1 && ok; ++dx) {
        const auto it = cells.find(pack(ix + dx, iy + dy));
        if (it == cells.end()) continue;
        for (const auto& q : it->second) {
          if (squared_distance(c, q) < s2) {
            ok = false;
            break;
          }
        }
      }
    }
    if (!ok) continue;
    cells[pack(ix, iy)].push_back(c);
    kept.push_back(c);
  }
  return PointSet(std::move(kept));
}

}  // namespace fockpack
