// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "fockpack/certify.hpp"
#include "fockpack/density.hpp"
#include "fockpack/fock.hpp"
#include "fockpack/lattice.hpp"
#include "oracles.hpp"

using namespace fockpack;

namespace {

constexpr double kRatioTarget = 0.952313;
constexpr double kRatioTol = 1e-6;
constexpr double kPackingTarget = 0.906900;
constexpr double kCoveringTarget = 1.209200;
constexpr double kDensityRelTol = 0.01;
constexpr double kBoundSlack = 0.03;
constexpr double kSharpnessTol = 0.02;
constexpr double kEigenTol = 1e-8;
constexpr double kResidualTol = 1e-10;
constexpr double kGershgorinFloor = 0.171093;
constexpr double kCollapse = 1e-6;

// Criteria 2 and 3: radii up to 40 starting at ten lattice spacings.
const std::vector<double> kLadderTo40{20, 25, 30, 35, 40};

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("C%-2d %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PointSet lattice(LatticeKind kind, double s, double side) {
  return generate({kind, s, {}, 0.0}, Region::centered(side));
}

// Lattice covering the radius ladder at scale s around a centered zeta cell.
PointSet padded_lattice(LatticeKind kind, double s) {
  return lattice(kind, s, 2.0 * (40.0 * s + 2.0 * s));
}

void criterion_1() {
  bool ok = true;
  double worst = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (double a : {0.5, 1.0, 2.0, std::numbers::pi}) {
    const FockParams params{a, 2.0};
    const double ratio = improved_interpolation_threshold(params) / tung_threshold(params);
    worst = std::max(worst, std::abs(ratio - kRatioTarget));
  }
  const double elapsed = seconds_since(t0);
  ok = worst <= kRatioTol && elapsed < 1e-3;
  report(1, ok, fmt("improved/tung ratio max |err| %.3g (tol 1e-6), %.3g s (limit 1 ms)", worst, elapsed));
}

void criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  const PackingConfig cfg{lattice(LatticeKind::hexagonal, 2.0, 160.0), 1.0};
  const auto e = packing_density(cfg, kLadderTo40, Region::centered(2.0), GridSpec{0.25});
  const double rel = std::abs(e.value - kPackingTarget) / kPackingTarget;
  report(2, rel <= kDensityRelTol,
         fmt("hexagonal packing density %.6f vs 0.906900, rel err %.3g (tol 0.01), %.2f s", e.value, rel,
             seconds_since(t0)));
}

void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  const double s = 1.8;
  const PackingConfig cfg{lattice(LatticeKind::hexagonal, s, 160.0), s / std::sqrt(3.0)};
  const auto e = covering_density(cfg, kLadderTo40, Region::centered(s), GridSpec{s / 8});
  const double rel = std::abs(e.value - kCoveringTarget) / kCoveringTarget;
  report(3, rel <= kDensityRelTol,
         fmt("hexagonal covering density %.6f vs 1.209200, rel err %.3g (tol 0.01), %.2f s", e.value, rel,
             seconds_since(t0)));
}

void criterion_4() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> sigma_dist(1.0, 3.0);
  int violations = 0;
  double worst = -1.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double sigma = sigma_dist(rng);
    const double zeta_side = 10.0 * sigma;
    const double side = 2.0 * (40.0 * sigma + 1.0 * sigma) + zeta_side;
    const auto ps = random_separated(Region::centered(side), sigma, 40000, rng());
    const double measured = min_separation(ps);
    const auto profile =
        density_profile(ps, default_radii(sigma), Region::centered(zeta_side), GridSpec{sigma / 2});
    const double upper = estimate_upper_density(profile).value;
    const double bound = separation_density_bound(measured);
    worst = std::max(worst, upper / bound - 1.0);
    if (upper > bound * (1.0 + kBoundSlack)) ++violations;
  }
  report(4, violations == 0,
         fmt("20 random separated sets: %.0f violations, max D+/bound - 1 = %.4f (slack 0.03)",
             violations, worst));
}

void criterion_5() {
  int violations = 0;
  double worst = 1e300;
  for (auto kind : {LatticeKind::hexagonal, LatticeKind::square}) {
    for (double s : {0.8, 1.0, 1.3, 1.8, 2.5}) {
      const auto ps = padded_lattice(kind, s);
      const double radius = covering_radius(ps, Region::centered(2.0 * s), GridSpec{s / 1000});
      const auto profile = density_profile(ps, default_radii(s), Region::centered(s), GridSpec{s / 4});
      const double lower = estimate_lower_density(profile).value;
      const double bound = covering_density_bound(radius);
      worst = std::min(worst, lower / bound - 1.0);
      if (lower < bound * (1.0 - kBoundSlack)) ++violations;
    }
  }
  report(5, violations == 0,
         fmt("10 lattice coverings: %.0f violations, min D-/bound - 1 = %.4f (slack 0.03)", violations, worst));
}

void criterion_6() {
  double worst = 0.0;
  for (double s : {1.0, 1.95}) {
    const auto ps = padded_lattice(LatticeKind::hexagonal, s);
    const auto profile = density_profile(ps, default_radii(s), Region::centered(s), GridSpec{s / 4});
    const double upper = estimate_upper_density(profile).value;
    const double lower = estimate_lower_density(profile).value;
    const double radius = covering_radius(ps, Region::centered(2.0 * s), GridSpec{s / 1000});
    worst = std::max(worst, std::abs(upper / separation_density_bound(min_separation(ps)) - 1.0));
    worst = std::max(worst, std::abs(lower / covering_density_bound(radius) - 1.0));
  }
  report(6, worst <= kSharpnessTol,
         fmt("hexagonal lattices vs both density bounds: max rel gap %.4f (tol 0.02)", worst));
}

void criterion_7() {
  const FockParams params{1.0, 2.0};
  const auto ps = lattice(LatticeKind::hexagonal, 1.95, 20.0);
  const auto cert = certify_interpolating_by_separation(ps, params);
  const bool flagged = cert.notes.find("NOT met") != std::string::npos;
  const bool ok = cert.verdict == Verdict::certified_interpolating && cert.route == Route::separation_thm5 &&
                  cert.sigma < tung_threshold(params) && flagged;
  report(7, ok,
         "sigma 1.95, alpha 1: " + to_string(cert.verdict) + " via " + to_string(cert.route) +
             fmt(", tung threshold %.6g, gap flagged %.0f", tung_threshold(params), flagged ? 1.0 : 0.0));
}

void criterion_8() {
  double worst_closed = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double d : {0.3, 1.0, 2.0}) {
      const auto e = eig_extremes(gram(alpha, PointSet({{0, 0}, {d, 0}})));
      const double off = std::exp(-alpha * d * d / 2.0);
      worst_closed = std::max({worst_closed, std::abs(e.lambda_min - (1 - off)), std::abs(e.lambda_max - (1 + off))});
    }
  }

  std::mt19937_64 rng(8);
  double worst_bisect = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const auto pts = oracle::random_points(rng, n, 4.0);
    const auto g = gram(1.0, PointSet(pts));
    std::vector<std::vector<oracle::Complex>> ref(n, std::vector<oracle::Complex>(n));
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t k = 0; k < n; ++k) {
        const oracle::Complex zm{pts[m].x, pts[m].y}, zk{pts[k].x, pts[k].y};
        ref[m][k] = std::exp(zm * std::conj(zk) - 0.5 * (std::norm(zm) + std::norm(zk)));
      }
    }
    const auto e = eig_extremes(g);
    const double lo = oracle::bisect_eigenvalue(ref, 0, -1.0, n + 1.0);
    const double hi = oracle::bisect_eigenvalue(ref, static_cast<int>(n) - 1, -1.0, n + 1.0);
    worst_bisect = std::max({worst_bisect, std::abs(e.lambda_min - lo), std::abs(e.lambda_max - hi)});
  }

  const auto patch = lattice_patch({LatticeKind::hexagonal, 2.0, {}, 0.0}, 4.0);
  std::vector<Complex> delta(patch.size());
  for (std::size_t i = 0; i < patch.size(); ++i) {
    if (patch[i] == Point{0, 0}) delta[i] = 1.0;
  }
  const auto sol = interpolate(1.0, patch, delta);
  const double floor = gershgorin_riesz_lower_bound(gram(1.0, patch));
  const bool ok = worst_closed <= kEigenTol && worst_bisect <= kEigenTol && patch.size() == 61 &&
                  sol.residual_inf <= kResidualTol && sol.lambda_min >= floor &&
                  std::abs(floor - kGershgorinFloor) < 1e-5;
  report(8, ok,
         fmt("2x2 max err %.2g, bisection max err %.2g (tol 1e-8); ", worst_closed, worst_bisect) +
             fmt("61-point residual %.2g (tol 1e-10), lambda_min %.6f >= floor %.6f", sol.residual_inf,
                 sol.lambda_min, floor));
}

void criterion_9() {
  const auto rows = conditioning_sweep(1.0, {2.2, 2.0, 1.8, 1.6}, 4.0);
  bool decreasing = rows.size() == 4;
  std::string values;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && !(rows[i].lambda_min > rows[i - 1].lambda_min)) decreasing = false;
    values += fmt(" %.3g:%.3g", rows[i].sigma, rows[i].lambda_min);
  }
  const double collapsed = conditioning_sweep(1.0, {0.5}, 4.0).front().lambda_min;
  report(9, decreasing && collapsed < kCollapse,
         "lambda_min by sigma" + values + fmt("; sigma 0.5: %.3g (limit 1e-6)", collapsed));
}

void criterion_10() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "fockpack-acceptance";
  fs::create_directories(dir);
  const std::string points = (dir / "perturbed.csv").string();

  const auto file_bytes = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };

  cli::RunConfig gen;
  gen.command = "lattice";
  gen.spacing = 1.0;
  gen.perturb = 0.1;
  gen.seed = 42;
  gen.output = points;
  const std::string report_a = cli::execute(gen).dump();
  const std::string bytes_a = file_bytes(points);
  const std::string report_b = cli::execute(gen).dump();
  bool ok = report_a == report_b && bytes_a == file_bytes(points);
  int compared = 1;

  for (const char* command : {"separation", "cover", "density", "packing", "covering", "certify-interp",
                              "certify-sampling", "thresholds", "fock-sweep"}) {
    cli::RunConfig cfg;
    cfg.command = command;
    if (cfg.command != "thresholds" && cfg.command != "fock-sweep") cfg.input = points;
    if (cfg.command == "certify-sampling") cfg.sigma = 1.0;
    if (cfg.command == "packing") cfg.r0 = 0.4;
    if (cfg.command == "cover") cfg.window = 6.0;
    ok = ok && cli::execute(cfg).dump() == cli::execute(cfg).dump();
    ++compared;
  }
  report(10, ok, fmt("%.0f seeded command pipelines re-run, JSON bit-identical", compared));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                    criterion_5, criterion_6, criterion_7, criterion_8,
                                                    criterion_9, criterion_10};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
