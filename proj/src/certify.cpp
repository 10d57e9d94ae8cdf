#include "fockpack/certify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fockpack/errors.hpp"

namespace fockpack {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;

std::string fmt6(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

const char* kScopeNote =
    "hypotheses verified on the given finite data only; the verdict applies to the "
    "infinite sequence this data represents";

}  // namespace

void FockParams::validate() const {
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw InvalidInput("alpha must be positive and finite");
  }
  if (!(p > 0.0) || std::isnan(p)) {
    throw InvalidInput("p must be in (0, inf]");
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified_interpolating: return "certified_interpolating";
    case Verdict::certified_sampling: return "certified_sampling";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(Route r) {
  switch (r) {
    case Route::separation_thm5: return "separation_thm5";
    case Route::separation_thm2: return "separation_thm2";
    case Route::covering_thm6: return "covering_thm6";
    case Route::density_empirical: return "density_empirical";
  }
  return "density_empirical";
}

void check_certificate(const Certificate& c) {
  if (c.verdict == Verdict::certified_interpolating) {
    if (c.route != Route::separation_thm5 && c.route != Route::separation_thm2) {
      throw ComputationError("interpolation certificate on a non-separation route");
    }
    if (!(c.bound < c.critical)) {
      throw ComputationError("interpolation certificate with bound >= critical density");
    }
  } else if (c.verdict == Verdict::certified_sampling) {
    if (c.route != Route::covering_thm6) {
      throw ComputationError("sampling certificate on a non-covering route");
    }
    if (!(c.bound > c.critical)) {
      throw ComputationError("sampling certificate with bound <= critical density");
    }
  }
}

double tung_threshold(const FockParams& params) {
  params.validate();
  return 2.0 / std::sqrt(params.alpha);
}

double improved_interpolation_threshold(const FockParams& params) {
  params.validate();
  return std::sqrt(2.0 * kPi / (kSqrt3 * params.alpha));
}

double covering_sampling_threshold(const FockParams& params) {
  params.validate();
  return std::sqrt(2.0 * kPi / (3.0 * kSqrt3 * params.alpha));
}

double critical_density(const FockParams& params) {
  params.validate();
  return params.alpha / kPi;
}

Certificate certify_interpolating_by_separation(const PointSet& ps, const FockParams& params) {
  params.validate();
  if (ps.size() < 2) {
    throw InvalidInput("interpolation certificate needs at least 2 points");
  }
  const double sigma = min_separation(ps);
  const double improved = improved_interpolation_threshold(params);
  const double tung = tung_threshold(params);

  Certificate c;
  c.sigma = sigma;
  c.bound = separation_density_bound(sigma);
  c.critical = critical_density(params);
  c.margin = c.critical - c.bound;

  std::ostringstream notes;
  if (sigma > improved) {
    c.verdict = Verdict::certified_interpolating;
    c.route = Route::separation_thm5;
    notes << "separation " << fmt6(sigma) << " > improved threshold " << fmt6(improved)
          << " gives upper density <= " << fmt6(c.bound) << " < alpha/pi = " << fmt6(c.critical);
    if (sigma > tung) {
      notes << "; Tung's threshold " << fmt6(tung) << " is also met";
    } else {
      notes << "; Tung's threshold " << fmt6(tung)
            << " is NOT met, so only the improved constant certifies this set";
    }
  } else if (sigma > tung) {
    // Unreachable while improved < tung; kept so reports can compare routes.
    c.verdict = Verdict::certified_interpolating;
    c.route = Route::separation_thm2;
    notes << "separation " << fmt6(sigma) << " > Tung threshold " << fmt6(tung);
  } else {
    c.verdict = Verdict::inconclusive;
    c.route = Route::separation_thm5;
    notes << "separation " << fmt6(sigma) << " <= improved threshold " << fmt6(improved)
          << "; separation alone does not decide interpolation";
  }
  notes << "; " << kScopeNote << "; p = " << fmt6(params.p) << " (criterion is p-independent)";
  c.notes = notes.str();
  check_certificate(c);
  return c;
}

Certificate certify_sampling_by_covering(const PointSet& ps, double sigma, const Region& region,
                                         const GridSpec& grid, const FockParams& params) {
  params.validate();
  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    throw InvalidInput("covering sigma must be positive and finite");
  }
  const double threshold = covering_sampling_threshold(params);

  Certificate c;
  c.route = Route::covering_thm6;
  c.sigma = sigma;
  c.bound = covering_density_bound(sigma);
  c.critical = critical_density(params);
  c.margin = c.bound - c.critical;

  std::ostringstream notes;
  if (!(sigma < threshold)) {
    c.verdict = Verdict::inconclusive;
    notes << "sigma above threshold: " << fmt6(sigma) << " >= " << fmt6(threshold);
  } else {
    const auto check = is_covering(ps, sigma, region, grid);
    if (!check.covered) {
      c.verdict = Verdict::inconclusive;
      notes << "not a covering: grid covering radius " << fmt6(check.covering_radius)
            << " + margin " << fmt6(check.margin) << " exceeds sigma " << fmt6(sigma);
      if (check.witness) {
        notes << "; deepest point (" << fmt6(check.witness->x) << ", " << fmt6(check.witness->y)
              << ")";
      }
    } else {
      c.verdict = Verdict::certified_sampling;
      notes << "sigma-disks cover the region (grid covering radius "
            << fmt6(check.covering_radius) << " + margin " << fmt6(check.margin) << " <= "
            << fmt6(sigma) << "); sigma < threshold " << fmt6(threshold)
            << " gives lower density >= " << fmt6(c.bound) << " > alpha/pi = "
            << fmt6(c.critical);
    }
  }
  notes << "; covering verified on region [" << fmt6(region.xmin) << ", " << fmt6(region.xmax)
        << "] x [" << fmt6(region.ymin) << ", " << fmt6(region.ymax) << "] only; " << kScopeNote
        << "; p = " << fmt6(params.p) << " (criterion is p-independent)";
  c.notes = notes.str();
  check_certificate(c);
  return c;
}

DensityClassification classify_by_density(const PointSet& ps, const FockParams& params,
                                          const DensityInputs& inputs) {
  params.validate();
  const double sigma = min_separation(ps);
  if (!(sigma > 0.0)) {
    throw InvalidInput("density classification needs a separated point set");
  }
  DensityClassification out;
  out.profile = density_profile(ps, inputs.radii, inputs.zeta_region, inputs.zeta_grid);
  out.upper = estimate_upper_density(out.profile);
  out.lower = estimate_lower_density(out.profile);
  const double critical = critical_density(params);
  out.indicates_interpolating = out.upper.value < critical;
  out.indicates_sampling = out.lower.value > critical;

  auto& c = out.certificate;
  c.verdict = Verdict::inconclusive;
  c.route = Route::density_empirical;
  c.sigma = sigma;
  c.bound = out.upper.value;
  c.critical = critical;
  c.margin = critical - out.upper.value;

  std::ostringstream notes;
  notes << "empirical, not certified: densities extrapolated from a finite sweep of "
        << out.profile.zeta_sweep.samples << " centers; upper " << fmt6(out.upper.value)
        << (out.indicates_interpolating ? " < " : " >= ") << "alpha/pi " << fmt6(critical)
        << " (" << (out.indicates_interpolating ? "interpolating" : "not interpolating")
        << " indication); lower " << fmt6(out.lower.value)
        << (out.indicates_sampling ? " > " : " <= ") << "alpha/pi " << fmt6(critical) << " ("
        << (out.indicates_sampling ? "sampling" : "not sampling") << " indication)";
  c.notes = notes.str();
  return out;
}

}  // namespace fockpack
