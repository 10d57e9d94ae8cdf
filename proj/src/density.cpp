#include "fockpack/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fockpack/errors.hpp"

namespace fockpack {

namespace {

// Lattice spacings are computed in floating point, so exact-contact
// configurations (hexagonal packing at spacing 2 r0, covering at the exact
// covering radius) need a relative allowance.
constexpr double kContactTolerance = 1e-9;

void require_positive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw InvalidInput(std::string(what) + " must be positive and finite");
  }
}

struct SweepResult {
  std::vector<double> sup;
  std::vector<double> inf;
  std::size_t samples = 0;
};

// ratio(zeta, r) evaluated for every radius and sampled center.
template <typename RatioFn>
SweepResult sweep(const std::vector<double>& radii, const std::vector<Point>& zetas, RatioFn ratio) {
  SweepResult out;
  out.samples = zetas.size();
  out.sup.assign(radii.size(), -std::numeric_limits<double>::infinity());
  out.inf.assign(radii.size(), std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    for (const auto& z : zetas) {
      const double v = ratio(z, radii[k]);
      out.sup[k] = std::max(out.sup[k], v);
      out.inf[k] = std::min(out.inf[k], v);
    }
  }
  return out;
}

}  // namespace

std::string to_string(DensityKind kind) { return kind == DensityKind::upper ? "upper" : "lower"; }

std::vector<double> default_radii(double scale) {
  require_positive(scale, "radius scale");
  return {10.0 * scale, 15.0 * scale, 20.0 * scale, 30.0 * scale, 40.0 * scale};
}

void validate_radii(const std::vector<double>& radii) {
  if (radii.empty()) throw InvalidInput("radii list is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require_positive(radii[i], "radius");
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw InvalidInput("radii must be strictly increasing");
    }
  }
}

void require_padding(const PointSet& ps, const Region& zeta_region, double reach) {
  zeta_region.validate();
  const Region needed = zeta_region.expanded(reach);
  if (ps.empty() || !ps.bounding_box().contains(needed)) {
    std::ostringstream msg;
    msg << "window too small for r_max: point data must cover [" << needed.xmin << ", "
        << needed.xmax << "] x [" << needed.ymin << ", " << needed.ymax << "]";
    if (!ps.empty()) {
      const Region box = ps.bounding_box();
      msg << " but spans [" << box.xmin << ", " << box.xmax << "] x [" << box.ymin << ", "
          << box.ymax << "]";
    }
    throw InvalidInput(msg.str());
  }
}

DensityProfile density_profile(const PointSet& ps, const std::vector<double>& radii,
                               const Region& zeta_region, const GridSpec& zeta_grid) {
  validate_radii(radii);
  const auto zetas = zeta_grid.samples(zeta_region);
  require_padding(ps, zeta_region, radii.back());

  const auto result = sweep(radii, zetas, [&](Point z, double r) {
    return static_cast<double>(ps.count_within(z, r, Boundary::open)) / (std::numbers::pi * r * r);
  });
  return {radii, result.sup, result.inf, {zeta_region, zeta_grid.step, result.samples}};
}

DensityEstimate extrapolate(const std::vector<double>& radii, const std::vector<double>& ratios,
                            DensityKind kind) {
  if (radii.size() < 3) {
    throw InvalidInput("density extrapolation needs at least 3 radii");
  }
  if (ratios.size() != radii.size()) {
    throw InvalidInput("radii and ratio lists differ in length");
  }
  const auto n = static_cast<double>(radii.size());
  // Means are accumulated as offsets from the first entry so a constant
  // series is reproduced exactly.
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    xbar += 1.0 / radii[i] - 1.0 / radii[0];
    ybar += ratios[i] - ratios[0];
  }
  xbar = 1.0 / radii[0] + xbar / n;
  ybar = ratios[0] + ybar / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double dx = 1.0 / radii[i] - xbar;
    sxx += dx * dx;
    sxy += dx * (ratios[i] - ybar);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  const double intercept = ybar - slope * xbar;
  double ss = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double e = ratios[i] - (intercept + slope / radii[i]);
    ss += e * e;
  }
  return {std::max(intercept, 0.0), ratios.back(), std::sqrt(ss / n), kind};
}

DensityEstimate estimate_upper_density(const DensityProfile& profile) {
  return extrapolate(profile.radii, profile.sup_ratio, DensityKind::upper);
}

DensityEstimate estimate_lower_density(const DensityProfile& profile) {
  return extrapolate(profile.radii, profile.inf_ratio, DensityKind::lower);
}

DensityEstimate packing_density(const PackingConfig& cfg, const std::vector<double>& radii,
                                const Region& zeta_region, const GridSpec& zeta_grid) {
  require_positive(cfg.r0, "packing radius r0");
  validate_radii(radii);
  if (radii.size() < 3) {
    throw InvalidInput("density extrapolation needs at least 3 radii");
  }
  if (cfg.centers.size() >= 2) {
    const double sep = min_separation(cfg.centers);
    if (sep < 2.0 * cfg.r0 * (1.0 - kContactTolerance)) {
      std::ostringstream msg;
      msg << "not a packing: minimum separation " << sep << " is below 2*r0 = " << 2.0 * cfg.r0;
      throw ComputationError(msg.str());
    }
  }
  const auto zetas = zeta_grid.samples(zeta_region);
  require_padding(cfg.centers, zeta_region, radii.back() + cfg.r0);

  const double r0 = cfg.r0;
  const auto result = sweep(radii, zetas, [&](Point z, double r) {
    const auto n = cfg.centers.count_within(z, r + r0, Boundary::open);
    return static_cast<double>(n) * r0 * r0 / (r * r);
  });
  return extrapolate(radii, result.sup, DensityKind::upper);
}

DensityEstimate covering_density(const PackingConfig& cfg, const std::vector<double>& radii,
                                 const Region& zeta_region, const GridSpec& zeta_grid) {
  require_positive(cfg.r0, "covering radius r0");
  validate_radii(radii);
  if (!(radii.front() > cfg.r0)) {
    throw InvalidInput("covering density radii must exceed r0");
  }
  if (radii.size() < 3) {
    throw InvalidInput("density extrapolation needs at least 3 radii");
  }
  const auto zetas = zeta_grid.samples(zeta_region);
  require_padding(cfg.centers, zeta_region, radii.back());

  const Region window = zeta_region.expanded(radii.back());
  const GridSpec check{std::min(zeta_grid.step, cfg.r0 / 4.0)};
  const auto scan = covering_scan(cfg.centers, window, check);
  if (scan.radius > cfg.r0 * (1.0 + kContactTolerance)) {
    std::ostringstream msg;
    msg << "not a covering: grid point (" << scan.deepest.x << ", " << scan.deepest.y
        << ") is " << scan.radius << " from the nearest center, above r0 = " << cfg.r0;
    throw ComputationError(msg.str());
  }

  const double r0 = cfg.r0;
  const auto result = sweep(radii, zetas, [&](Point z, double r) {
    const auto n = cfg.centers.count_within(z, r - r0, Boundary::closed);
    return static_cast<double>(n) * r0 * r0 / (r * r);
  });
  return extrapolate(radii, result.inf, DensityKind::lower);
}

double separation_density_bound(double sigma) {
  require_positive(sigma, "separation sigma");
  return 2.0 / (std::numbers::sqrt3 * sigma * sigma);
}

double covering_density_bound(double sigma) {
  require_positive(sigma, "covering sigma");
  return 2.0 / (3.0 * std::numbers::sqrt3 * sigma * sigma);
}

}  // namespace fockpack
