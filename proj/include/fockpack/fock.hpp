#pragma once

// Fock space F^2_alpha at desk scale: reproducing kernel, Gram matrices of
// normalized kernels, finite interpolation and finite-section Riesz bounds.
//
// Points are read as complex numbers z = x + iy. Everything stored is in the
// weighted form f(z) exp(-alpha |z|^2 / 2), so the Gram matrix has unit
// diagonal and entries of modulus exp(-alpha |z_m - z_n|^2 / 2).

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "fockpack/geometry.hpp"

namespace fockpack {

using Complex = std::complex<double>;

inline Complex to_complex(Point p) { return {p.x, p.y}; }

/// K(z, w) = exp(alpha z conj(w)). Throws ComputationError("kernel
/// overflow") when the result is not representable.
Complex kernel(double alpha, Complex z, Complex w);

struct GramMatrix {
  Eigen::MatrixXcd entries;
  PointSet points;
  double alpha = 0.0;

  Eigen::Index size() const { return entries.rows(); }
};

/// G[m][n] = exp(alpha z_m conj(z_n) - alpha (|z_m|^2 + |z_n|^2) / 2).
/// Built from the upper triangle, so it is exactly Hermitian.
GramMatrix gram(double alpha, const PointSet& ps);

/// 1 - max_m sum_{n != m} |G[m][n]|; a lower bound on lambda_min when positive.
double gershgorin_riesz_lower_bound(const GramMatrix& g);

struct EigenExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Smallest and largest eigenvalues. The eigenpair residuals are checked
/// against tol * lambda_max; a solver failure or a larger residual raises
/// ComputationError with the achieved residual.
EigenExtremes eig_extremes(const GramMatrix& g, double tol = 1e-10);

struct InterpolationSolution {
  std::vector<Complex> coefficients;
  double residual_inf = 0.0;  // max weighted misfit at the nodes, re-evaluated
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double condition = 0.0;
  double coeff_norm = 0.0;
};

/// Below this lambda_min the Gram system is treated as singular.
inline constexpr double kSingularGramThreshold = 1e-12;

/// Finds f = sum_n c_n k_{z_n} with f(z_m) = v_m, where k_w(z) =
/// exp(alpha z conj(w) - alpha |w|^2 / 2). Solves G c = w with
/// w_m = v_m exp(-alpha |z_m|^2 / 2) by Cholesky plus iterative refinement.
InterpolationSolution interpolate(double alpha, const PointSet& ps, std::span<const Complex> targets);

/// f(z) = sum_n c_n exp(alpha z conj(z_n) - alpha |z_n|^2 / 2).
Complex evaluate(double alpha, const PointSet& ps, std::span<const Complex> coefficients, Complex z);

/// f(z) exp(-alpha |z|^2 / 2), computed without forming the unweighted value.
Complex evaluate_weighted(double alpha, const PointSet& ps, std::span<const Complex> coefficients,
                          Complex z);

struct ConditioningRow {
  double sigma = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double condition = 0.0;
};

/// Gram extremes on hexagonal patches of radius `patch_radius` spacings,
/// one row per spacing, sorted by ascending sigma.
std::vector<ConditioningRow> conditioning_sweep(double alpha, const std::vector<double>& spacings,
                                                double patch_radius);

}  // namespace fockpack
