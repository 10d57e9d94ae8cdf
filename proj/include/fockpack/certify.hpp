#pragma once

// Separation and covering thresholds for Fock-space interpolation and
// sampling, and the certificates built from them.
//
// A certificate states that the hypotheses of a sufficient condition were
// verified on the given finite data; the verdict concerns the infinite
// sequence that data represents. Thresholds are strict: a measured value
// exactly at a threshold is inconclusive.

#include <limits>
#include <string>
#include <vector>

#include "fockpack/density.hpp"
#include "fockpack/geometry.hpp"

namespace fockpack {

struct FockParams {
  double alpha = 1.0;
  double p = 2.0;  // carried for reporting; the criteria do not depend on it

  static constexpr double p_infinity = std::numeric_limits<double>::infinity();
  void validate() const;
};

enum class Verdict { certified_interpolating, certified_sampling, inconclusive };
enum class Route { separation_thm5, separation_thm2, covering_thm6, density_empirical };

std::string to_string(Verdict v);
std::string to_string(Route r);

struct Certificate {
  Verdict verdict = Verdict::inconclusive;
  Route route = Route::separation_thm5;
  double sigma = 0.0;     // measured separation, or the covering radius used
  double bound = 0.0;     // density bound implied by sigma
  double critical = 0.0;  // alpha / pi
  double margin = 0.0;    // critical - bound (interpolation), bound - critical (sampling)
  std::string notes;
};

/// Throws ComputationError if a certified verdict is not backed by its bound.
void check_certificate(const Certificate& c);

/// 2 / sqrt(alpha).
double tung_threshold(const FockParams& params);
/// sqrt(2 pi / (sqrt(3) alpha)).
double improved_interpolation_threshold(const FockParams& params);
/// sqrt(2 pi / (3 sqrt(3) alpha)).
double covering_sampling_threshold(const FockParams& params);
/// alpha / pi.
double critical_density(const FockParams& params);

Certificate certify_interpolating_by_separation(const PointSet& ps, const FockParams& params);

Certificate certify_sampling_by_covering(const PointSet& ps, double sigma, const Region& region,
                                         const GridSpec& grid, const FockParams& params);

struct DensityInputs {
  std::vector<double> radii;
  Region zeta_region;
  GridSpec zeta_grid;
};

struct DensityClassification {
  Certificate certificate;  // route density_empirical, verdict always inconclusive
  DensityProfile profile;
  DensityEstimate upper;
  DensityEstimate lower;
  bool indicates_interpolating = false;  // upper estimate < alpha/pi
  bool indicates_sampling = false;       // lower estimate > alpha/pi
};

/// Empirical comparison of the extrapolated densities with alpha/pi. Never
/// certifies: a finite sweep of centers cannot bound the true extrema.
DensityClassification classify_by_density(const PointSet& ps, const FockParams& params,
                                          const DensityInputs& inputs);

}  // namespace fockpack
