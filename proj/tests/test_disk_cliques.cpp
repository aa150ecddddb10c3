#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "geoclique/clique_solvers.hpp"
#include "geoclique/disk_cliques.hpp"
#include "geoclique/generators.hpp"
#include "oracles.hpp"

using namespace geoclique;

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

GroundedDisk gd(long x, long r) { return GroundedDisk{Rational(x), Rational(r)}; }

double dist(double ax, double ay, double bx, double by) { return std::hypot(ax - bx, ay - by); }

// Radii in [1, 3], centers loose in a box: general instances where plenty of
// pairs miss each other. Near-tangent pairs are resampled so the tolerance
// policy never decides an edge.
std::vector<Disk> scattered_disks(int n, std::mt19937_64& rng) {
  for (;;) {
    std::vector<Disk> out;
    for (int i = 0; i < n; ++i)
      out.push_back(Disk{(2 * rnd_unit(rng) - 1) * 4.0, (2 * rnd_unit(rng) - 1) * 4.0,
                         1.0 + 2.0 * rnd_unit(rng)});
    bool crisp = true;
    for (int i = 0; i < n && crisp; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(dist(out[i].cx, out[i].cy, out[j].cx, out[j].cy) - (out[i].r + out[j].r)) <
            1e-5) {
          crisp = false;
          break;
        }
    if (crisp) return out;
  }
}

// Equal-radius pairwise intersecting triple with no common point, checked by
// the candidate-point witness with a safety margin on both sides.
std::array<Disk, 3> non_helly_triple(double r, std::mt19937_64& rng) {
  for (;;) {
    std::array<Disk, 3> t;
    for (int i = 0; i < 3; ++i)
      t[i] = Disk{(2 * rnd_unit(rng) - 1) * 1.4 * r, (2 * rnd_unit(rng) - 1) * 1.4 * r, r};
    bool meet = true;
    for (int i = 0; i < 3 && meet; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (dist(t[i].cx, t[i].cy, t[j].cx, t[j].cy) > 2 * r - 1e-3) {
          meet = false;
          break;
        }
    if (!meet) continue;
    if (oracles::triple_has_common_point(t[0], t[1], t[2], 1e-6)) continue;
    return t;
  }
}

std::array<Disk, 3> equilateral_triple(double side, double r) {
  return {Disk{0, 0, r}, Disk{side, 0, r}, Disk{side / 2, side * kSqrt3 / 2, r}};
}

}  // namespace

TEST_CASE("disk instance validation") {
  CHECK_NOTHROW(validate(DiskInstance{{Disk{0, 0, 1.5}}, 1.0, 3.0}));
  CHECK_THROWS_AS(validate(DiskInstance{{Disk{0, 0, 0.5}}, 1.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(DiskInstance{{Disk{0, 0, 3.5}}, 1.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(DiskInstance{{}, 3.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(DiskInstance{{}, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("grounded disk clique on frozen instances") {
  CHECK(grounded_disk_max_clique({gd(0, 1), gd(1, 1), gd(2, 1)}) == std::vector<int>{0, 1, 2});
  CHECK(grounded_disk_max_clique({gd(0, 1), gd(5, 1)}) == std::vector<int>{0});
  // 0-1 tangent, 0-2 tangent, 1-2 overlapping: one triangle
  std::vector<GroundedDisk> mixed{gd(0, 1), gd(2, 1),
                                  GroundedDisk{Rational(3), Rational(9, 4)}};
  CHECK(grounded_disk_max_clique(mixed) == std::vector<int>{0, 1, 2});
  CHECK(grounded_disk_max_clique({}).empty());
  CHECK(grounded_disk_max_clique({gd(7, 3)}) == std::vector<int>{0});
  CHECK_THROWS_AS(grounded_disk_max_clique({GroundedDisk{Rational(0), Rational(0)}}),
                  std::invalid_argument);
}

TEST_CASE("grounded disk clique matches the reference solver") {
  for (int iter = 0; iter < 200; ++iter) {
    int n = 2 + iter % 12;
    auto disks = gen_grounded_disks(n, 5200 + iter);
    auto got = grounded_disk_max_clique(disks);
    Graph g = oracles::grounded_disk_graph(disks);
    auto want = oracles::brute_max_clique(g);
    REQUIRE(got.size() == want.size());
    CHECK(g.is_clique(got));
    CHECK(grounded_disk_max_clique(disks) == got);
  }
}

TEST_CASE("reach radius is convex and anchored at centers") {
  std::mt19937_64 rng(41);
  std::vector<Disk> lone{Disk{2, -1, 1.5}};
  CHECK(reach_radius(lone, 2, -1) == doctest::Approx(-1.5));
  CHECK(reach_radius(lone, 2, 1.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(reach_radius({}, 0, 0), std::invalid_argument);

  for (int iter = 0; iter < 400; ++iter) {
    auto disks = scattered_disks(2 + static_cast<int>(rnd_below(rng, 7)), rng);
    double x1 = (2 * rnd_unit(rng) - 1) * 8, y1 = (2 * rnd_unit(rng) - 1) * 8;
    double x2 = (2 * rnd_unit(rng) - 1) * 8, y2 = (2 * rnd_unit(rng) - 1) * 8;
    double lam = rnd_unit(rng);
    double lhs = reach_radius(disks, lam * x1 + (1 - lam) * x2, lam * y1 + (1 - lam) * y2);
    double rhs = lam * reach_radius(disks, x1, y1) + (1 - lam) * reach_radius(disks, x2, y2);
    CHECK(lhs <= rhs + 1e-9);
  }
}

TEST_CASE("smallest intersecting circle on frozen instances") {
  auto one = smallest_intersecting_circle({Disk{3, 4, 2}});
  CHECK(one.cx == doctest::Approx(3.0));
  CHECK(one.cy == doctest::Approx(4.0));
  CHECK(one.radius == 0.0);
  CHECK(one.basis == std::vector<int>{0});

  auto two = smallest_intersecting_circle({Disk{0, 0, 1}, Disk{2, 0, 1}});
  CHECK(std::abs(two.cx - 1.0) < 1e-6);
  CHECK(std::abs(two.cy) < 1e-6);
  CHECK(two.radius <= 1e-9);

  auto eq = equilateral_triple(1.9, 1);
  auto tri = smallest_intersecting_circle({eq[0], eq[1], eq[2]});
  double want_r = 1.9 / kSqrt3 - 1.0;
  CHECK(tri.radius == doctest::Approx(want_r).epsilon(1e-7));
  CHECK(tri.cx == doctest::Approx(0.95).epsilon(1e-7));
  CHECK(tri.cy == doctest::Approx(1.9 * kSqrt3 / 6).epsilon(1e-7));
  REQUIRE(tri.basis.size() == 3);

  // same picture scaled by 3: radii 3, side 5.7
  auto big = smallest_intersecting_circle(
      {Disk{0, 0, 3}, Disk{5.7, 0, 3}, Disk{2.85, 5.7 * kSqrt3 / 2, 3}});
  CHECK(big.radius == doctest::Approx(3 * want_r).epsilon(1e-7));

  CHECK_THROWS_AS(smallest_intersecting_circle({Disk{0, 0, 1}, Disk{3, 0, 1}}),
                  NotPairwiseIntersecting);
  CHECK_THROWS_AS(smallest_intersecting_circle({}), std::invalid_argument);
  try {
    smallest_intersecting_circle({Disk{0, 0, 1}, Disk{0.5, 0, 1}, Disk{9, 0, 1}});
    FAIL("expected NotPairwiseIntersecting");
  } catch (const NotPairwiseIntersecting& e) {
    CHECK(e.a == 0);
    CHECK(e.b == 2);
  }
}

TEST_CASE("smallest intersecting circle invariants on random instances") {
  const double tol = 1e-9;
  const double radius_cap = 3 * (2 / kSqrt3 - 1);
  for (int iter = 0; iter < 120; ++iter) {
    int n = 2 + iter % 11;
    auto disks = gen_intersecting_disks(n, 1.0, 3.0, 6400 + iter);
    auto circ = smallest_intersecting_circle(disks, tol);
    for (const Disk& d : disks)
      CHECK(dist(circ.cx, circ.cy, d.cx, d.cy) - d.r <= circ.radius + tol);
    REQUIRE(!circ.basis.empty());
    CHECK(circ.basis.size() <= 3);
    double worst = reach_radius(disks, circ.cx, circ.cy);
    for (int b : circ.basis)
      CHECK(dist(circ.cx, circ.cy, disks[b].cx, disks[b].cy) - disks[b].r >= worst - 10 * tol);
    CHECK(circ.radius <= radius_cap + 1e-7);

    auto again = smallest_intersecting_circle(disks, tol);
    CHECK(again.cx == circ.cx);
    CHECK(again.cy == circ.cy);
    CHECK(again.radius == circ.radius);
  }
  for (int iter = 0; iter < 60; ++iter) {
    auto disks = gen_helly_disks(3 + iter % 9, 1.0, 3.0, 6800 + iter);
    auto circ = smallest_intersecting_circle(disks, tol);
    CHECK(circ.radius == 0.0);  // the center must reach inside every disk
    for (const Disk& d : disks) CHECK(point_in_disk(d, circ.cx, circ.cy, tol));
  }
}

TEST_CASE("zero radius agrees with the common point witness on triples") {
  std::mt19937_64 rng(97);
  const double tol = 1e-9;
  int checked = 0;
  while (checked < 300) {
    std::vector<Disk> t;
    for (int i = 0; i < 3; ++i)
      t.push_back(Disk{(2 * rnd_unit(rng) - 1) * 2.2, (2 * rnd_unit(rng) - 1) * 2.2,
                       1.0 + 2.0 * rnd_unit(rng)});
    bool meet = true;
    for (int i = 0; i < 3 && meet; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (dist(t[i].cx, t[i].cy, t[j].cx, t[j].cy) > t[i].r + t[j].r - 1e-3) {
          meet = false;
          break;
        }
    if (!meet) continue;
    bool surely_common = oracles::triple_has_common_point(t[0], t[1], t[2], -1e-6);
    bool maybe_common = oracles::triple_has_common_point(t[0], t[1], t[2], 1e-6);
    if (surely_common != maybe_common) continue;  // too close to the boundary to arbitrate
    auto circ = smallest_intersecting_circle(t, tol);
    CHECK((circ.radius <= tol) == surely_common);
    ++checked;
  }
}

TEST_CASE("non-Helly triples respect the equal-radius bound") {
  std::mt19937_64 rng(131);
  for (double r : {1.0, 2.0, 3.0}) {
    for (int iter = 0; iter < 60; ++iter) {
      auto t = non_helly_triple(r, rng);
      auto circ = smallest_intersecting_circle({t[0], t[1], t[2]});
      CHECK(circ.radius > 0.0);
      CHECK(circ.radius <= r * (2 / kSqrt3 - 1) + 1e-7);
    }
  }
}

TEST_CASE("piercing verification") {
  std::vector<Disk> unit{Disk{0, 0, 1}};
  CHECK(verify_piercing(unit, {{0, 0}}, 1e-9).ok);
  CHECK(verify_piercing(unit, {{1, 0}}, 1e-9).ok);  // boundary counts
  auto miss = verify_piercing(unit, {{2, 0}}, 1e-9);
  CHECK_FALSE(miss.ok);
  CHECK(miss.first_failure == 0);
  CHECK(verify_piercing({}, {}, 1e-9).ok);
  CHECK_FALSE(verify_piercing(unit, {}, 1e-9).ok);
}

TEST_CASE("piercing points on frozen instances") {
  // Everything already shares the origin: one point.
  std::vector<Disk> shared{Disk{0.2, 0, 1}, Disk{-0.3, 0.1, 1.5}, Disk{0.3, -0.4, 2.9}};
  auto single = piercing_points(shared);
  REQUIRE(single.points.size() == 1);
  for (const Disk& d : shared) CHECK(point_in_disk(d, single.points[0][0], single.points[0][1], 1e-9));

  // Non-Helly equilateral triple: the fixed triangle, one point per disk.
  auto t = equilateral_triple(1.9, 1);
  auto tri = piercing_points({t[0], t[1], t[2]});
  REQUIRE(tri.points.size() == 3);
  CHECK(tri.frame.scale == 1.0);
  CHECK(tri.frame.angle == doctest::Approx(-3.14159265358979 / 3).epsilon(1e-7));
  for (const auto& p : tri.points)
    CHECK(dist(p[0], p[1], tri.frame.cx, tri.frame.cy) == doctest::Approx(1 / kSqrt3).epsilon(1e-7));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      CHECK(dist(tri.points[i][0], tri.points[i][1], tri.points[j][0], tri.points[j][1]) ==
            doctest::Approx(1.0).epsilon(1e-7));
  // bottom/left/right resolve to disks 1, 0, 2 here; A, B, C land in exactly
  // those disks respectively
  CHECK(point_in_disk(t[1], tri.points[0][0], tri.points[0][1], 1e-9));
  CHECK(point_in_disk(t[2], tri.points[1][0], tri.points[1][1], 1e-9));
  CHECK(point_in_disk(t[0], tri.points[2][0], tri.points[2][1], 1e-9));
  CHECK_FALSE(point_in_disk(t[0], tri.points[0][0], tri.points[0][1], 1e-9));

  // Doubling every length doubles the output.
  auto t2 = equilateral_triple(3.8, 2);
  auto tri2 = piercing_points({t2[0], t2[1], t2[2]});
  REQUIRE(tri2.points.size() == 3);
  CHECK(tri2.frame.scale == 2.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(tri2.points[i][0] == doctest::Approx(2 * tri.points[i][0]).epsilon(1e-7));
    CHECK(tri2.points[i][1] == doctest::Approx(2 * tri.points[i][1]).epsilon(1e-7));
  }

  CHECK_THROWS_AS(piercing_points({Disk{0, 0, 1}, Disk{0.5, 0, 3.5}}), std::invalid_argument);
  CHECK_THROWS_AS(piercing_points({}), std::invalid_argument);
  CHECK_THROWS_AS(piercing_points({Disk{0, 0, 1}, Disk{5, 0, 1}}), NotPairwiseIntersecting);
}

TEST_CASE("piercing points cover random pairwise intersecting instances") {
  for (int iter = 0; iter < 150; ++iter) {
    int n = 2 + iter % 11;
    auto disks = gen_intersecting_disks(n, 1.001, 2.999, 7600 + iter);
    auto got = piercing_points(disks);  // throws if its own verification fails
    CHECK(got.points.size() >= 1);
    CHECK(got.points.size() <= 3);
    CHECK(verify_piercing(disks, got.points, 1e-9).ok);
  }
}

TEST_CASE("approximate disk clique on structured instances") {
  // Common point: candidate points recover everything.
  auto helly = gen_helly_disks(9, 1.0, 3.0, 311);
  DiskInstance hi{helly, 1.0, 3.0};
  CHECK(approx_disk_clique(hi).size() == 9);

  // Two separate clusters, no cross intersections: optimum is a cluster.
  std::vector<Disk> clusters{Disk{0, 0, 1},   Disk{0.5, 0.2, 1}, Disk{-0.2, 0.4, 1},
                             Disk{10, 0, 1},  Disk{10.4, 0.3, 1}};
  DiskInstance ci{clusters, 1.0, 3.0};
  auto cc = approx_disk_clique(ci);
  Graph cg = oracles::disk_graph(clusters, 1e-9);
  CHECK(cc.size() == oracles::brute_max_clique(cg).size());

  // Bare non-Helly triple: no single point works, the pair solves reach 2/3.
  auto t = equilateral_triple(1.9, 1);
  DiskInstance ti{{t[0], t[1], t[2]}, 1.0, 3.0};
  CHECK(approx_disk_clique(ti).size() == 2);

  CHECK(approx_disk_clique(DiskInstance{{}, 1.0, 3.0}).empty());
  CHECK_THROWS_AS(approx_disk_clique(DiskInstance{{Disk{0, 0, 1}, Disk{0, 0, 3.2}}, 1.0, 3.2}),
                  std::invalid_argument);
}

TEST_CASE("approximate disk clique keeps the two-thirds guarantee") {
  std::mt19937_64 rng(733);
  const double tol = 1e-9;
  for (int iter = 0; iter < 120; ++iter) {
    int n = 3 + iter % 10;
    std::vector<Disk> disks =
        (iter % 3 == 0) ? gen_intersecting_disks(n, 1.0, 2.8, 8200 + iter) : scattered_disks(n, rng);
    DiskInstance inst{disks, 1.0, 3.0};
    auto got = approx_disk_clique(inst, tol);
    Graph g = oracles::disk_graph(inst.disks, tol);
    auto best = oracles::brute_max_clique(g);
    REQUIRE(g.is_clique(got));
    CHECK(got.size() <= best.size());
    CHECK(3 * got.size() >= 2 * best.size());
    CHECK(approx_disk_clique(inst, tol) == got);
  }
}
