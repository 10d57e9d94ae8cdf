#pragma once

// Empirical Beurling densities, packing / covering densities of equal-radius
// disk configurations, and the density bounds implied by separation and
// covering.
//
// Limits over r and extrema over all centers are replaced by a finite ladder
// of radii and a grid of centers. Every sweep needs point data extending
// r_max beyond the center region; this is checked, because a short window
// silently biases densities downward.

#include <string>
#include <vector>

#include "fockpack/geometry.hpp"

namespace fockpack {

struct ZetaSweep {
  Region region;
  double step = 0.0;
  std::size_t samples = 0;
};

/// Disk-count ratios n(Z, B(zeta, r)) / (pi r^2) over a center sweep.
struct DensityProfile {
  std::vector<double> radii;  // strictly increasing
  std::vector<double> sup_ratio;
  std::vector<double> inf_ratio;
  ZetaSweep zeta_sweep;
};

enum class DensityKind { upper, lower };
std::string to_string(DensityKind kind);

struct DensityEstimate {
  double value = 0.0;  // extrapolated limit, clamped at 0
  double raw_at_rmax = 0.0;
  double fit_residual = 0.0;  // RMS misfit of c + d/r
  DensityKind kind = DensityKind::upper;
};

/// Disks of common radius r0 centered at `centers`.
struct PackingConfig {
  PointSet centers;
  double r0 = 0.0;
};

/// Default radii ladder {10, 15, 20, 30, 40} * scale.
std::vector<double> default_radii(double scale);

/// Throws InvalidInput unless radii are positive, finite and strictly increasing.
void validate_radii(const std::vector<double>& radii);

/// Throws InvalidInput("window too small for r_max") unless `zeta_region`
/// grown by `reach` lies inside the bounding box of `ps`.
void require_padding(const PointSet& ps, const Region& zeta_region, double reach);

DensityProfile density_profile(const PointSet& ps, const std::vector<double>& radii,
                               const Region& zeta_region, const GridSpec& zeta_grid);

/// Least-squares fit of ratio(r) ~ c + d/r; value = c.
DensityEstimate estimate_upper_density(const DensityProfile& profile);
DensityEstimate estimate_lower_density(const DensityProfile& profile);

/// Fit y ~ c + d/r over the given radii. Exposed for reuse and testing.
DensityEstimate extrapolate(const std::vector<double>& radii, const std::vector<double>& ratios,
                            DensityKind kind);

/// Sum of pi r0^2 over disks meeting B(zeta, r) (|z - zeta| < r + r0),
/// normalised by pi r^2, maximised over zeta and extrapolated in r.
/// Throws ComputationError("not a packing") if disks overlap.
DensityEstimate packing_density(const PackingConfig& cfg, const std::vector<double>& radii,
                                const Region& zeta_region, const GridSpec& zeta_grid);

/// Sum of pi r0^2 over disks contained in B(zeta, r) (|z - zeta| <= r - r0),
/// minimised over zeta and extrapolated in r. The disks must cover the
/// working window (zeta region grown by r_max), checked by a grid scan with
/// the zeta grid step capped at r0/4; throws ComputationError("not a
/// covering") otherwise.
DensityEstimate covering_density(const PackingConfig& cfg, const std::vector<double>& radii,
                                 const Region& zeta_region, const GridSpec& zeta_grid);

/// 2/(sqrt(3) sigma^2): upper bound on D+ for any sigma-separated set.
double separation_density_bound(double sigma);
/// 2/(3 sqrt(3) sigma^2): lower bound on D- when the sigma-disks cover the plane.
double covering_density_bound(double sigma);

}  // namespace fockpack
