#include <doctest.h>

#include <cmath>
#include <random>

#include "fockpack/errors.hpp"
#include "fockpack/geometry.hpp"
#include "fockpack/lattice.hpp"
#include "oracles.hpp"

using namespace fockpack;

TEST_CASE("point set rejects duplicates and non-finite coordinates") {
  CHECK_THROWS_AS(PointSet({{0, 0}, {1, 1}, {0, 0}}), InvalidInput);
  CHECK_THROWS_AS(PointSet({{0, 0}, {-0.0, 0.0}}), InvalidInput);
  CHECK_THROWS_AS(PointSet({{NAN, 0}}), InvalidInput);
  CHECK_THROWS_AS(PointSet({{0, INFINITY}}), InvalidInput);
  CHECK_NOTHROW(PointSet({{0, 0}, {1e-300, 0}}));
}

TEST_CASE("disk and region invariants") {
  CHECK_THROWS_AS(Disk({0, 0}, 0.0), InvalidInput);
  CHECK_THROWS_AS(Disk({0, 0}, -1.0), InvalidInput);
  CHECK_THROWS_AS((Region{1, 0, 0, 1}.validate()), InvalidInput);
  CHECK_THROWS_AS((GridSpec{0.6}.validate_for(Region{0, 1, 0, 2})), InvalidInput);
  CHECK_NOTHROW(GridSpec{0.49}.validate_for(Region{0, 1, 0, 2}));
}

TEST_CASE("grid samples include both edges") {
  const auto s = GridSpec{0.3}.samples(Region{0, 1, 0, 1});
  // 0, 0.3, 0.6, 0.9, 1.0 on each axis
  CHECK(s.size() == 25);
  CHECK(s.front() == Point{0, 0});
  CHECK(s.back() == Point{1, 1});
}

TEST_CASE("min_separation") {
  CHECK(min_separation(PointSet({{0, 0}, {3, 4}})) == 5.0);
  CHECK_THROWS_WITH_AS(min_separation(PointSet({{0, 0}})), doctest::Contains("separation undefined"),
                       InvalidInput);
  CHECK_THROWS_AS(min_separation(PointSet{}), InvalidInput);

  SUBCASE("hexagonal lattice with spacing 2 matches brute force") {
    const auto ps = generate({LatticeKind::hexagonal, 2.0, {0.3, -0.1}, 0.0}, Region::centered(30));
    const double brute = oracle::pair_min(ps.points());
    CHECK(min_separation(ps) == brute);
    CHECK(brute == doctest::Approx(2.0).epsilon(1e-12).scale(0));
  }
}

TEST_CASE("min_separation equals brute force on random sets (property)") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 400;
    const double side = 1.0 + static_cast<double>(rng() % 100);
    const auto pts = oracle::random_points(rng, n, side);
    CHECK(min_separation(PointSet(pts)) == oracle::pair_min(pts));
  }
}

TEST_CASE("min_separation is rigid-motion invariant and scales with dilation") {
  std::mt19937_64 rng(5);
  const auto pts = oracle::random_points(rng, 200, 20.0);
  const double base = min_separation(PointSet(pts));
  const double c = std::cos(0.7), s = std::sin(0.7);
  std::vector<Point> moved, scaled;
  for (const auto& p : pts) {
    moved.push_back({c * p.x - s * p.y + 13.0, s * p.x + c * p.y - 4.0});
    scaled.push_back({2.5 * p.x, 2.5 * p.y});
  }
  CHECK(min_separation(PointSet(moved)) == doctest::Approx(base).epsilon(1e-12).scale(0));
  CHECK(min_separation(PointSet(scaled)) == doctest::Approx(2.5 * base).epsilon(1e-12).scale(0));
}

TEST_CASE("count_in_disk uses the open disk") {
  CHECK(count_in_disk(PointSet{}, Disk({0, 0}, 1)) == 0);
  CHECK(count_in_disk(PointSet({{0, 0}}), Disk({0, 0}, 1)) == 1);
  CHECK(count_in_disk(PointSet({{1, 0}}), Disk({0, 0}, 1)) == 0);
  CHECK(PointSet({{1, 0}}).count_within({0, 0}, 1.0, Boundary::closed) == 1);
}

TEST_CASE("count_in_disk on the unit hexagonal lattice at r = 10") {
  const auto ps = generate({LatticeKind::hexagonal, 1.0, {}, 0.0}, Region::centered(40));
  const auto brute = oracle::count_open(ps.points(), {0, 0}, 10.0);
  // Brute-force count over the enumerated lattice, computed independently.
  CHECK(brute == 365);
  CHECK(count_in_disk(ps, Disk({0, 0}, 10.0)) == 365);
  const double area_term = M_PI * 100.0 * 2.0 / std::sqrt(3.0);
  CHECK(std::abs(365.0 - area_term) <= 8.0 * 10.0 * 2.0 / std::sqrt(3.0));
}

TEST_CASE("count_in_disk equals a naive scan (property)") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-30, 30);
  std::uniform_real_distribution<double> radius(0.01, 25);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = oracle::random_points(rng, 50 + rng() % 2000, 40.0);
    const PointSet ps(pts);
    for (int q = 0; q < 50; ++q) {
      const Point c{u(rng), u(rng)};
      const double r = radius(rng);
      CHECK(count_in_disk(ps, Disk(c, r)) == oracle::count_open(pts, c, r));
      CHECK(ps.count_within(c, r, Boundary::closed) == oracle::count_closed(pts, c, r));
    }
  }
  // Lattice points sitting exactly on circles exercise the boundary rule.
  const auto lat = generate({LatticeKind::square, 1.0, {}, 0.0}, Region::centered(30));
  for (double r : {1.0, 2.0, 5.0, 10.0}) {
    CHECK(count_in_disk(lat, Disk({0, 0}, r)) == oracle::count_open(lat.points(), {0, 0}, r));
  }
}

TEST_CASE("index cells hold exactly the points inside them") {
  std::mt19937_64 rng(3);
  const auto pts = oracle::random_points(rng, 500, 10.0);
  const PointSet ps(pts);
  std::size_t total = 0;
  for (std::size_t iy = 0; iy < ps.cells_y(); ++iy) {
    for (std::size_t ix = 0; ix < ps.cells_x(); ++ix) {
      const Region cell = ps.cell_region(ix, iy);
      for (auto i : ps.cell_points(ix, iy)) {
        const Point p = ps[i];
        CHECK((p.x >= cell.xmin && p.x < cell.xmax && p.y >= cell.ymin && p.y < cell.ymax));
        ++total;
      }
    }
  }
  CHECK(total == ps.size());
}

TEST_CASE("covering_radius") {
  SUBCASE("single point, farthest corner") {
    const double r = covering_radius(PointSet({{0, 0}}), Region{-1, 1, -1, 1}, GridSpec{0.01});
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12).scale(0));
  }
  SUBCASE("hexagonal spacing 1.8 gives the triangle circumradius") {
    const auto ps = generate({LatticeKind::hexagonal, 1.8, {}, 0.0}, Region::centered(20));
    const GridSpec grid{0.005};
    const double r = covering_radius(ps, Region::centered(4), grid);
    const double exact = 1.8 / std::sqrt(3.0);
    CHECK(r <= exact + 1e-12);
    CHECK(r >= exact - grid_margin(grid));
    CHECK(r == doctest::Approx(oracle::covering_scan(ps.points(), -2, 2, -2, 2, 800)).epsilon(1e-9).scale(0));
  }
  SUBCASE("square spacing 1 gives half the diagonal") {
    const auto ps = generate({LatticeKind::square, 1.0, {}, 0.0}, Region::centered(12));
    const GridSpec grid{0.01};
    const double r = covering_radius(ps, Region::centered(3), grid);
    CHECK(r <= std::sqrt(0.5) + 1e-12);
    CHECK(r >= std::sqrt(0.5) - grid_margin(grid));
  }
  CHECK_THROWS_AS(covering_radius(PointSet{}, Region{-1, 1, -1, 1}, GridSpec{0.1}), InvalidInput);
}

TEST_CASE("covering_radius does not increase when a point is added (property)") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-5, 5);
  auto pts = oracle::random_points(rng, 30, 10.0);
  const Region region{-5, 5, -5, 5};
  const GridSpec grid{0.05};
  double previous = covering_radius(PointSet(pts), region, grid);
  for (int k = 0; k < 15; ++k) {
    pts.push_back({u(rng), u(rng)});
    const double now = covering_radius(PointSet(pts), region, grid);
    CHECK(now <= previous);
    previous = now;
  }
}

TEST_CASE("is_covering") {
  const auto hex = generate({LatticeKind::hexagonal, 1.8, {}, 0.0}, Region::centered(20));
  const Region interior = Region::centered(4);

  const auto yes = is_covering(hex, 1.05, interior, GridSpec{0.007});
  CHECK(yes.covered);
  CHECK_FALSE(yes.witness.has_value());

  const auto no = is_covering(hex, 1.0, interior, GridSpec{0.007});
  CHECK_FALSE(no.covered);
  REQUIRE(no.witness.has_value());
  // The deepest point sits at a triangle circumcenter: 1.8/sqrt(3) from
  // its three nearest lattice points.
  CHECK(oracle::nearest(hex.points(), *no.witness) ==
        doctest::Approx(1.8 / std::sqrt(3.0)).epsilon(5e-3).scale(0));

  CHECK(is_covering(PointSet({{0, 0}}), 10.0, Region{-1, 1, -1, 1}, GridSpec{0.05}).covered);
  CHECK_THROWS_AS(is_covering(hex, 0.0, interior, GridSpec{0.1}), InvalidInput);

  SUBCASE("monotone in sigma (property)") {
    const GridSpec grid{0.02};
    for (double s = 0.9; s < 1.3; s += 0.01) {
      if (is_covering(hex, s, interior, grid).covered) {
        CHECK(is_covering(hex, s + 0.005, interior, grid).covered);
        CHECK(is_covering(hex, s + 0.2, interior, grid).covered);
      }
    }
  }
}
