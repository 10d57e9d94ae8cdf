#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fockpack/errors.hpp"
#include "fockpack/fock.hpp"
#include "fockpack/lattice.hpp"
#include "oracles.hpp"

using namespace fockpack;

namespace {

PointSet hex_patch(double s, double radius = 4.0, Point offset = {}) {
  return lattice_patch({LatticeKind::hexagonal, s, offset, 0.0}, radius);
}

// Gram entries straight from the definition, in complex arithmetic.
std::vector<std::vector<Complex>> gram_oracle(double alpha, const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::vector<Complex>> g(n, std::vector<Complex>(n));
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex zm{pts[m].x, pts[m].y}, zk{pts[k].x, pts[k].y};
      g[m][k] = std::exp(alpha * zm * std::conj(zk) - 0.5 * alpha * (std::norm(zm) + std::norm(zk)));
    }
  }
  return g;
}

}  // namespace

TEST_CASE("kernel values") {
  CHECK(kernel(1.0, {0, 0}, {5, -3}) == Complex(1, 0));
  const Complex v = kernel(1.0, {0, 1}, {0, 1});
  CHECK(v.real() == doctest::Approx(std::exp(1.0)));
  CHECK(std::abs(v.imag()) < 1e-15);
  const Complex z{0.3, -1.1}, w{-0.7, 0.4};
  CHECK(std::abs(kernel(2.0, z, w) - std::conj(kernel(2.0, w, z))) < 1e-14);
  CHECK_THROWS_WITH_AS(kernel(1.0, {30, 0}, {30, 0}), doctest::Contains("kernel overflow"), ComputationError);
  CHECK_THROWS_AS(kernel(0.0, z, w), InvalidInput);
}

TEST_CASE("reproducing property by quadrature") {
  // <z^k, K_w> = (alpha/pi) int z^k K(w, z) e^{-alpha |z|^2} dA = w^k.
  const double alpha = 1.0;
  const Complex w{0.7, 0.4};
  const int angles = 96;
  for (int k = 0; k <= 4; ++k) {
    auto ring = [&](double rho, bool imag) {
      double acc = 0.0;
      for (int j = 0; j < angles; ++j) {
        const double t = 2.0 * std::numbers::pi * j / angles;
        const Complex z = std::polar(rho, t);
        const Complex v = std::pow(z, k) * kernel(alpha, w, z) * std::exp(-alpha * rho * rho);
        acc += imag ? v.imag() : v.real();
      }
      return acc * 2.0 * std::numbers::pi / angles * rho;
    };
    const double re = oracle::simpson([&](double r) { return ring(r, false); }, 0.0, 10.0, 2000);
    const double im = oracle::simpson([&](double r) { return ring(r, true); }, 0.0, 10.0, 2000);
    const Complex got = Complex(re, im) * (alpha / std::numbers::pi);
    CHECK(std::abs(got - std::pow(w, k)) < 1e-6);
  }
}

TEST_CASE("gram matrix") {
  SUBCASE("single point") {
    const auto g = gram(1.0, PointSet({{3, -2}}));
    CHECK(g.size() == 1);
    CHECK(g.entries(0, 0) == Complex(1, 0));
  }
  SUBCASE("two points at distance 2") {
    const auto g = gram(1.0, PointSet({{0, 0}, {2, 0}}));
    CHECK(std::abs(g.entries(0, 1)) == doctest::Approx(0.135335).epsilon(1e-5).scale(0));
    const auto e = eig_extremes(g);
    CHECK(e.lambda_min == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-12).scale(0));
    CHECK(e.lambda_max == doctest::Approx(1.0 + std::exp(-2.0)).epsilon(1e-12).scale(0));
  }
  SUBCASE("61-point hexagonal patch, Gershgorin floor") {
    const auto ps = hex_patch(2.0);
    REQUIRE(ps.size() == 61);
    const auto g = gram(1.0, ps);
    CHECK(gershgorin_riesz_lower_bound(g) == doctest::Approx(0.171093).epsilon(1e-5).scale(0));
    const auto e = eig_extremes(g);
    CHECK(e.lambda_min == doctest::Approx(0.319301).epsilon(1e-5).scale(0));
    CHECK(e.lambda_max == doctest::Approx(1.337792).epsilon(1e-5).scale(0));
    CHECK(e.lambda_min >= gershgorin_riesz_lower_bound(g));
  }
}

TEST_CASE("gram entries and eigenvalues match independent oracles (property)") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> alpha_dist(0.3, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const auto pts = oracle::random_points(rng, n, 4.0);
    const double alpha = alpha_dist(rng);
    const auto g = gram(alpha, PointSet(pts));
    const auto ref = gram_oracle(alpha, pts);
    double trace = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      trace += g.entries(m, m).real();
      CHECK(g.entries(m, m) == Complex(1, 0));
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(std::abs(g.entries(m, k) - ref[m][k]) < 1e-13);
        CHECK(g.entries(m, k) == std::conj(g.entries(k, m)));
      }
    }
    CHECK(trace == static_cast<double>(n));
    const auto e = eig_extremes(g);
    const double lo = oracle::bisect_eigenvalue(ref, 0, -1.0, n + 1.0);
    const double hi = oracle::bisect_eigenvalue(ref, static_cast<int>(n) - 1, -1.0, n + 1.0);
    CHECK(std::abs(e.lambda_min - lo) < 1e-8);
    CHECK(std::abs(e.lambda_max - hi) < 1e-8);
    CHECK(e.lambda_min <= 1.0);
    CHECK(e.lambda_max >= 1.0);
  }
}

TEST_CASE("translation leaves the spectrum unchanged") {
  const auto base = gram(1.0, hex_patch(1.8));
  const auto moved = gram(1.0, hex_patch(1.8, 4.0, {3.7, -1.2}));
  const auto a = eig_extremes(base);
  const auto b = eig_extremes(moved);
  CHECK(std::abs(a.lambda_min - b.lambda_min) < 1e-10);
  CHECK(std::abs(a.lambda_max - b.lambda_max) < 1e-10);
}

TEST_CASE("interpolation") {
  SUBCASE("single point") {
    const PointSet ps({{0.5, 0.5}});
    const std::vector<Complex> v{{2.0, -1.0}};
    const auto sol = interpolate(1.0, ps, v);
    CHECK(std::abs(evaluate(1.0, ps, sol.coefficients, {0.5, 0.5}) - v[0]) < 1e-12);
    CHECK(sol.condition == 1.0);
  }
  SUBCASE("zero targets give zero coefficients") {
    const auto ps = hex_patch(2.0);
    const std::vector<Complex> zeros(ps.size());
    const auto sol = interpolate(1.0, ps, zeros);
    CHECK(sol.coeff_norm == 0.0);
    CHECK(sol.residual_inf == 0.0);
  }
  SUBCASE("weighted delta at the centre of the 61-point patch") {
    const auto ps = hex_patch(2.0);
    std::vector<Complex> v(ps.size());
    std::size_t centre = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps[i] == Point{0, 0}) centre = i;
    }
    v[centre] = 1.0;
    const auto sol = interpolate(1.0, ps, v);
    CHECK(sol.residual_inf <= 1e-10);
    CHECK(sol.condition <= 11.0);
    CHECK(sol.condition == doctest::Approx(4.19).epsilon(0.01).scale(0));
    // Independent check of the weighted interpolant at every node.
    for (std::size_t m = 0; m < ps.size(); ++m) {
      Complex f{};
      for (std::size_t n = 0; n < ps.size(); ++n) {
        const Complex zm = to_complex(ps[m]), zn = to_complex(ps[n]);
        f += sol.coefficients[n] *
             std::exp(zm * std::conj(zn) - 0.5 * std::norm(zn) - 0.5 * std::norm(zm));
      }
      CHECK(std::abs(f - v[m] * std::exp(-0.5 * std::norm(to_complex(ps[m])))) < 1e-10);
    }
  }
  SUBCASE("target count mismatch and non-finite targets") {
    const auto ps = hex_patch(2.0, 1.0);
    CHECK_THROWS_AS(interpolate(1.0, ps, std::vector<Complex>(2)), InvalidInput);
    std::vector<Complex> v(ps.size());
    v[0] = {NAN, 0};
    CHECK_THROWS_AS(interpolate(1.0, ps, v), InvalidInput);
  }
  SUBCASE("beneath-threshold patch is ill-posed") {
    const auto ps = hex_patch(0.5);
    const std::vector<Complex> v(ps.size(), Complex{1, 0});
    CHECK_THROWS_WITH_AS(interpolate(1.0, ps, v), doctest::Contains("ill-posed"), ComputationError);
  }
}

TEST_CASE("evaluate and evaluate_weighted agree") {
  const PointSet ps({{0, 0}, {1, 0.5}, {-0.5, 1.5}});
  const std::vector<Complex> c{{1, 0}, {0, 2}, {-0.5, 0.25}};
  for (Complex z : {Complex(0.2, 0.1), Complex(-1, 1), Complex(2, -0.3)}) {
    const Complex w = evaluate_weighted(1.3, ps, c, z);
    CHECK(std::abs(evaluate(1.3, ps, c, z) * std::exp(-0.65 * std::norm(z)) - w) < 1e-12);
  }
  CHECK(evaluate(1.0, PointSet({{1, 1}}), std::vector<Complex>{{1, 0}}, {0, 0}) ==
        Complex(std::exp(-1.0), 0));
}

TEST_CASE("conditioning sweep") {
  const auto rows = conditioning_sweep(1.0, {2.0, 1.6, 2.2, 1.8}, 4.0);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].sigma == 1.6);
  CHECK(rows[3].sigma == 2.2);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].lambda_min > rows[i - 1].lambda_min);
  CHECK(rows[3].lambda_min == doctest::Approx(0.70177).epsilon(1e-4).scale(0));
  CHECK(rows[2].lambda_min == doctest::Approx(0.31930).epsilon(1e-4).scale(0));
  CHECK(rows[1].lambda_min == doctest::Approx(0.0010862).epsilon(1e-3).scale(0));
  CHECK(rows[0].lambda_min < 1e-8);
  CHECK(rows[2].condition == doctest::Approx(rows[2].lambda_max / rows[2].lambda_min));

  const auto dense = conditioning_sweep(1.0, {0.5}, 4.0);
  CHECK(dense[0].lambda_min < 1e-6);
  CHECK_THROWS_AS(conditioning_sweep(1.0, {}, 4.0), InvalidInput);
  CHECK_THROWS_AS(conditioning_sweep(1.0, {-1.0}, 4.0), InvalidInput);
}
