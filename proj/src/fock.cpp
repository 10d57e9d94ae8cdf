#include "fockpack/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "fockpack/errors.hpp"
#include "fockpack/lattice.hpp"

namespace fockpack {

namespace {

const double kMaxExponent = std::log(std::numeric_limits<double>::max());

void require_alpha(double alpha) {
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw InvalidInput("alpha must be positive and finite");
  }
}

Complex checked_exp(Complex exponent) {
  if (!(exponent.real() <= kMaxExponent) || !std::isfinite(exponent.imag())) {
    std::ostringstream msg;
    msg << "kernel overflow: exponent real part " << exponent.real() << " exceeds "
        << kMaxExponent;
    throw ComputationError(msg.str());
  }
  return std::exp(exponent);
}

// exp(alpha z conj(w) - alpha (|z|^2 + |w|^2) / 2), with the real part formed
// as -alpha |z - w|^2 / 2 so it never overflows.
Complex normalized_entry(double alpha, Point z, Point w) {
  const double re = -0.5 * alpha * squared_distance(z, w);
  const double im = alpha * (z.y * w.x - z.x * w.y);
  return std::polar(std::exp(re), im);
}

void check_coefficients(const PointSet& ps, std::span<const Complex> coefficients) {
  if (coefficients.size() != ps.size()) {
    throw InvalidInput("coefficient vector length " + std::to_string(coefficients.size()) +
                       " does not match " + std::to_string(ps.size()) + " nodes");
  }
}

}  // namespace

Complex kernel(double alpha, Complex z, Complex w) {
  require_alpha(alpha);
  return checked_exp(alpha * z * std::conj(w));
}

GramMatrix gram(double alpha, const PointSet& ps) {
  require_alpha(alpha);
  if (ps.empty()) throw InvalidInput("Gram matrix of an empty point set");
  const auto n = static_cast<Eigen::Index>(ps.size());
  GramMatrix g{Eigen::MatrixXcd(n, n), ps, alpha};
  for (Eigen::Index m = 0; m < n; ++m) {
    g.entries(m, m) = Complex(1.0, 0.0);
    for (Eigen::Index k = m + 1; k < n; ++k) {
      const Complex v = normalized_entry(alpha, ps[static_cast<std::size_t>(m)],
                                         ps[static_cast<std::size_t>(k)]);
      g.entries(m, k) = v;
      g.entries(k, m) = std::conj(v);
    }
  }
  return g;
}

double gershgorin_riesz_lower_bound(const GramMatrix& g) {
  double worst = 0.0;
  for (Eigen::Index m = 0; m < g.size(); ++m) {
    double row = 0.0;
    for (Eigen::Index k = 0; k < g.size(); ++k) {
      if (k != m) row += std::abs(g.entries(m, k));
    }
    worst = std::max(worst, row);
  }
  return 1.0 - worst;
}

EigenExtremes eig_extremes(const GramMatrix& g, double tol) {
  if (!(std::isfinite(tol) && tol > 0.0)) throw InvalidInput("tolerance must be positive");
  if (g.size() == 0 || g.entries.rows() != g.entries.cols()) {
    throw InvalidInput("eigenvalues need a nonempty square matrix");
  }
  const double scale = g.entries.cwiseAbs().maxCoeff();
  const double asym = (g.entries - g.entries.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-12 * scale)) {
    throw InvalidInput("matrix is not Hermitian");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g.entries, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ComputationError("Hermitian eigensolver did not converge");
  }
  const auto& values = solver.eigenvalues();  // ascending
  const Eigen::Index last = values.size() - 1;
  EigenExtremes out{values(0), values(last)};

  const auto residual = [&](Eigen::Index i) {
    const Eigen::VectorXcd v = solver.eigenvectors().col(i);
    return (g.entries * v - values(i) * v).norm();
  };
  const double achieved = std::max(residual(0), residual(last));
  if (!(achieved <= tol * std::max(std::abs(out.lambda_max), 1e-300))) {
    std::ostringstream msg;
    msg << "eigen-iteration did not reach tolerance " << tol << ": achieved residual " << achieved;
    throw ComputationError(msg.str());
  }
  return out;
}

Complex evaluate(double alpha, const PointSet& ps, std::span<const Complex> coefficients, Complex z) {
  require_alpha(alpha);
  check_coefficients(ps, coefficients);
  Complex sum{0.0, 0.0};
  for (std::size_t n = 0; n < ps.size(); ++n) {
    const Complex zn = to_complex(ps[n]);
    sum += coefficients[n] * checked_exp(alpha * z * std::conj(zn) - 0.5 * alpha * std::norm(zn));
  }
  return sum;
}

Complex evaluate_weighted(double alpha, const PointSet& ps, std::span<const Complex> coefficients,
                          Complex z) {
  require_alpha(alpha);
  check_coefficients(ps, coefficients);
  const Point zp{z.real(), z.imag()};
  Complex sum{0.0, 0.0};
  for (std::size_t n = 0; n < ps.size(); ++n) {
    sum += coefficients[n] * normalized_entry(alpha, zp, ps[n]);
  }
  return sum;
}

InterpolationSolution interpolate(double alpha, const PointSet& ps, std::span<const Complex> targets) {
  require_alpha(alpha);
  if (targets.size() != ps.size()) {
    throw InvalidInput("target count " + std::to_string(targets.size()) + " does not match " +
                       std::to_string(ps.size()) + " nodes");
  }
  const auto n = static_cast<Eigen::Index>(ps.size());
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const auto i = static_cast<std::size_t>(m);
    const Complex w = targets[i] * std::exp(-0.5 * alpha * std::norm(to_complex(ps[i])));
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      throw InvalidInput("weighted target " + std::to_string(i) + " is not finite");
    }
    rhs(m) = w;
  }

  const GramMatrix g = gram(alpha, ps);
  const EigenExtremes ext = eig_extremes(g);
  if (ext.lambda_min < kSingularGramThreshold) {
    std::ostringstream msg;
    msg << "beneath-threshold configuration: interpolation ill-posed (lambda_min = "
        << ext.lambda_min << ")";
    throw ComputationError(msg.str());
  }

  const Eigen::LLT<Eigen::MatrixXcd> llt(g.entries);
  if (llt.info() != Eigen::Success) {
    throw ComputationError("beneath-threshold configuration: interpolation ill-posed (Cholesky failed)");
  }
  Eigen::VectorXcd c = llt.solve(rhs);
  for (int pass = 0; pass < 3; ++pass) {
    const Eigen::VectorXcd r = rhs - g.entries * c;
    const Eigen::VectorXcd dc = llt.solve(r);
    c += dc;
    if (dc.norm() <= std::numeric_limits<double>::epsilon() * c.norm()) break;
  }

  InterpolationSolution out;
  out.coefficients.assign(c.data(), c.data() + c.size());
  out.lambda_min = ext.lambda_min;
  out.lambda_max = ext.lambda_max;
  out.condition = ext.lambda_max / ext.lambda_min;
  out.coeff_norm = c.norm();
  for (Eigen::Index m = 0; m < n; ++m) {
    const auto i = static_cast<std::size_t>(m);
    const Complex fw = evaluate_weighted(alpha, ps, out.coefficients, to_complex(ps[i]));
    out.residual_inf = std::max(out.residual_inf, std::abs(fw - rhs(m)));
  }
  return out;
}

std::vector<ConditioningRow> conditioning_sweep(double alpha, const std::vector<double>& spacings,
                                                double patch_radius) {
  require_alpha(alpha);
  if (spacings.empty()) throw InvalidInput("at least one spacing required");
  for (double s : spacings) {
    if (!(std::isfinite(s) && s > 0.0)) throw InvalidInput("spacings must be positive");
  }
  std::vector<double> sorted = spacings;
  std::sort(sorted.begin(), sorted.end());

  std::vector<ConditioningRow> rows;
  rows.reserve(sorted.size());
  for (double s : sorted) {
    const LatticeSpec spec{LatticeKind::hexagonal, s, {0.0, 0.0}, 0.0};
    const auto ext = eig_extremes(gram(alpha, lattice_patch(spec, patch_radius)));
    const double cond = ext.lambda_min > 0.0 ? ext.lambda_max / ext.lambda_min
                                             : std::numeric_limits<double>::infinity();
    rows.push_back({s, ext.lambda_min, ext.lambda_max, cond});
  }
  return rows;
}

}  // namespace fockpack
