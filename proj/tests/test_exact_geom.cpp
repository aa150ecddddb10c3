#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "geoclique/geometry.hpp"
#include "oracles.hpp"

using namespace geoclique;

namespace {

Point pt(long x, long y) { return {Rational(x), Rational(y)}; }
Point pt(Rational x, Rational y) { return {x, y}; }

Segment seg(long ax, long ay, long bx, long by) { return {pt(ax, ay), pt(bx, by)}; }

}  // namespace

TEST_CASE("rational canonical form and parsing") {
  CHECK(Rational(3, 6).to_string() == "1/2");
  CHECK(Rational(-4, 2).to_string() == "-2");
  CHECK(Rational(4, -6).to_string() == "-2/3");
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational::from_string("10/4").to_string() == "5/2");
  CHECK(Rational::from_string("-7") == Rational(-7));
  CHECK(Rational::from_string("-7").den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);

  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(-0.75) == Rational(-3, 4));
  CHECK(pow2(-3) == Rational(1, 8));
  CHECK(pow2(10) == Rational(1024));

  Rational a(2, 3), b(5, 7);
  CHECK((a + b).to_string() == "29/21");
  CHECK((a * b) == Rational(10, 21));
  CHECK((a - b) < Rational(0));
  CHECK(abs(a - b) == Rational(1, 21));
  CHECK(Rational(7, 8).bit_length() == 4);  // den 8 = 1000b dominates
  CHECK(Rational(5, 3).bit_length() == 3);

  std::ostringstream os;
  os << Rational(-9, 12);
  CHECK(os.str() == "-3/4");
}

TEST_CASE("rational round trips through the string form") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 99999);
  for (int i = 0; i < 500; ++i) {
    Rational r(num(rng), den(rng));
    CHECK(Rational::from_string(r.to_string()) == r);
  }
}

TEST_CASE("orientation of frozen triangles") {
  CHECK(orient(pt(0, 0), pt(1, 0), pt(0, 1)) == 1);
  CHECK(orient(pt(0, 0), pt(1, 0), pt(2, 0)) == 0);
  CHECK(orient(pt(0, 0), pt(1, 1), pt(2, 0)) == -1);
}

TEST_CASE("orientation is antisymmetric and translation/scale invariant") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> c(-50, 50), s(1, 20);
  for (int i = 0; i < 2000; ++i) {
    Point p = pt(c(rng), c(rng)), q = pt(c(rng), c(rng)), r = pt(c(rng), c(rng));
    int o = orient(p, q, r);
    CHECK(orient(q, p, r) == -o);
    CHECK(orient(p, r, q) == -o);
    Rational sc(s(rng), s(rng));
    Point t = pt(c(rng), c(rng));
    auto map = [&](const Point& z) { return Point{z.x * sc + t.x, z.y * sc + t.y}; };
    CHECK(orient(map(p), map(q), map(r)) == o);
  }
}

TEST_CASE("segment intersection on frozen cases") {
  CHECK(segments_intersect(seg(0, 0, 2, 2), seg(0, 2, 2, 0)));
  CHECK_FALSE(segments_intersect(seg(0, 0, 1, 1), seg(2, 2, 3, 3)));
  CHECK(segments_intersect(seg(0, 0, 3, 3), seg(2, 0, 0, 1)));  // meet at (2/3, 2/3)
  CHECK(segments_intersect(seg(0, 0, 1, 1), seg(1, 1, 2, 0)));  // shared endpoint
  CHECK(segments_intersect(seg(0, 0, 2, 0), seg(1, 0, 1, 5)));  // T contact
  CHECK(segments_intersect(seg(0, 0, 2, 0), seg(1, 0, 3, 0)));  // collinear overlap
  CHECK_FALSE(segments_intersect(seg(0, 0, 1, 1), seg(0, 1, 1, 2)));  // parallel
  // Near miss that would fool doubles-scale epsilons.
  Segment a = seg(0, 0, 1, 1);
  Segment b{pt(Rational(1, 2), Rational(1, 2) + Rational(1, 1000000000)), pt(2, 3)};
  CHECK_FALSE(segments_intersect(a, b));
}

TEST_CASE("segment intersection agrees with an independent parametric solver") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> c(-6, 6);
  int hits = 0;
  for (int i = 0; i < 10000; ++i) {
    // Tiny coordinate range on purpose: shared endpoints, collinear overlaps
    // and degenerate touches all occur with decent probability.
    Segment s = seg(c(rng), c(rng), c(rng), c(rng));
    Segment t = seg(c(rng), c(rng), c(rng), c(rng));
    bool got = segments_intersect(s, t);
    bool want = oracles::segments_intersect_parametric(s, t);
    REQUIRE(got == want);
    hits += got;
  }
  CHECK(hits > 0);
  CHECK(hits < 10000);
}

TEST_CASE("canonical line equations compare equal exactly when lines coincide") {
  LineEq l1 = line_through(pt(0, 0), pt(2, 2));
  LineEq l2 = line_through(pt(-5, -5), pt(7, 7));
  CHECK(l1 == l2);
  CHECK(l1.a == Rational(1));
  CHECK(l1.b == Rational(-1));
  CHECK(l1.c == Rational(0));

  LineEq h = line_through(pt(1, 5), pt(3, 5));
  CHECK(h == (LineEq{Rational(0), Rational(1), Rational(5)}));
  LineEq v = line_through(pt(2, 0), pt(2, 9));
  CHECK(v == (LineEq{Rational(1), Rational(0), Rational(2)}));
  CHECK(on_line(v, pt(2, -100)));
  CHECK_FALSE(on_line(v, pt(3, 0)));

  CHECK(parallel(l1, line_through(pt(0, 1), pt(1, 2))));
  CHECK_FALSE(parallel(l1, h));

  auto x = line_intersection(l1, h);
  REQUIRE(x.has_value());
  CHECK(*x == pt(5, 5));
  CHECK_FALSE(line_intersection(l1, line_through(pt(0, 1), pt(1, 2))).has_value());
  CHECK_FALSE(line_intersection(l1, l2).has_value());
  CHECK_THROWS_AS(line_through(pt(1, 1), pt(1, 1)), std::invalid_argument);
}

TEST_CASE("strict independence on frozen cases") {
  GroundedSegment s1{Rational(0), pt(1, 2)};
  GroundedSegment s2{Rational(3), pt(2, 2)};
  CHECK(strictly_independent(s1, s2));  // lines meet at (3/2, 3), above both
  CHECK(strictly_independent(s2, s1));

  GroundedSegment c1{Rational(0), pt(2, 2)};
  GroundedSegment c2{Rational(2), pt(0, 2)};
  CHECK(segments_intersect(c1, c2));
  CHECK_FALSE(strictly_independent(c1, c2));

  GroundedSegment v1{Rational(0), pt(0, 2)};
  GroundedSegment v2{Rational(1), pt(1, 2)};
  CHECK_FALSE(strictly_independent(v1, v2));  // parallel extensions never meet

  // Lines cross above one free endpoint but below the other: dependent.
  GroundedSegment w1{Rational(0), pt(1, 4)};
  GroundedSegment w2{Rational(3), pt(2, 1)};
  CHECK_FALSE(strictly_independent(w1, w2));
  CHECK_FALSE(segments_intersect(w1, w2));

  CHECK_THROWS_AS(strictly_independent(v1, GroundedSegment{Rational(0), pt(1, 1)}),
                  std::invalid_argument);

  LineEq ground{Rational(0), Rational(1), Rational(0)};
  CHECK(strictly_independent(s1, s2, ground));
  CHECK_THROWS_AS(strictly_independent(s1, s2, LineEq{Rational(0), Rational(1), Rational(2)}),
                  std::invalid_argument);
}

TEST_CASE("strict independence matches its two-condition definition on random pairs") {
  std::mt19937_64 rng(31);
  int independent = 0, intersecting = 0;
  for (int i = 0; i < 4000; ++i) {
    auto segs = oracles::random_grounded_segments(2, rng);
    bool got = strictly_independent(segs[0], segs[1]);
    bool want = oracles::strictly_independent_parametric(segs[0], segs[1]);
    REQUIRE(got == want);
    CHECK(got == strictly_independent(segs[1], segs[0]));
    bool meet = segments_intersect(segs[0], segs[1]);
    CHECK_FALSE((got && meet));  // mutually exclusive states
    independent += got;
    intersecting += meet;
  }
  CHECK(independent > 0);
  CHECK(intersecting > 0);
}

TEST_CASE("grounded disk intersection on frozen cases") {
  auto gd = [](Rational x, Rational r) { return GroundedDisk{x, r}; };
  CHECK(grounded_disks_intersect(gd(0, 1), gd(2, 1)));  // tangent, 4 <= 4
  CHECK_FALSE(grounded_disks_intersect(gd(0, 1), gd(Rational(21, 10), 1)));
  CHECK(grounded_disks_intersect(gd(0, 1), gd(3, Rational(9, 4))));  // tangent, 9 <= 9
  CHECK_THROWS_AS(validate(GroundedDisk{Rational(0), Rational(0)}), std::invalid_argument);
}

TEST_CASE("grounded disk predicate equals the center-distance form") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 9), rnum(1, 40);
  int hits = 0;
  for (int i = 0; i < 4000; ++i) {
    GroundedDisk d{Rational(num(rng), den(rng)), Rational(rnum(rng), den(rng))};
    GroundedDisk e{Rational(num(rng), den(rng)), Rational(rnum(rng), den(rng))};
    bool got = grounded_disks_intersect(d, e);
    REQUIRE(got == oracles::grounded_disks_intersect_distance(d, e));
    hits += got;
  }
  CHECK(hits > 0);
  CHECK(hits < 4000);
}

TEST_CASE("projective involution fixes incidence and is its own inverse") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9), ynum(1, 30);
  for (int i = 0; i < 2000; ++i) {
    Point p{Rational(num(rng), den(rng)), Rational(ynum(rng), den(rng))};
    Point q{Rational(num(rng), den(rng)), Rational(ynum(rng), den(rng))};
    if (p == q) continue;
    CHECK(involute(involute(p)) == p);
    LineEq l = line_through(p, q);
    if (l.a.is_zero() && l.c.is_zero()) continue;  // the ground line has no image
    LineEq il = involute(l);
    CHECK(on_line(il, involute(p)));
    CHECK(on_line(il, involute(q)));
    CHECK(involute(il) == l);
  }
  CHECK_THROWS_AS(involute(pt(1, 0)), std::invalid_argument);
}

TEST_CASE("upward ray images of frozen segments") {
  UpwardRay r1 = to_upward_ray(GroundedSegment{Rational(0), pt(0, 1)});
  CHECK(r1.origin == pt(0, 1));
  CHECK(r1.through == pt(0, 2));

  UpwardRay r2 = to_upward_ray(GroundedSegment{Rational(0), pt(2, 2)});
  CHECK(r2.origin == pt(Rational(1), Rational(1, 2)));
  CHECK(r2.through == pt(1, 1));

  CHECK_THROWS_AS(validate(UpwardRay{pt(0, 0), pt(1, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(validate(GroundedSegment{Rational(0), pt(1, 0)}), std::invalid_argument);
}

TEST_CASE("ray intersection on frozen cases") {
  UpwardRay a{pt(0, 0), pt(2, 2)};
  UpwardRay b{pt(2, 0), pt(0, 2)};
  CHECK(rays_intersect(a, b));
  REQUIRE(ray_crossing(a, b).has_value());
  CHECK(*ray_crossing(a, b) == pt(1, 1));

  UpwardRay v0{pt(0, 0), pt(0, 1)};
  UpwardRay v1{pt(1, 0), pt(1, 1)};
  CHECK_FALSE(rays_intersect(v0, v1));
  CHECK_FALSE(ray_crossing(v0, v1).has_value());

  // Supporting lines y=x and y=2x-6 meet at (6,6): ahead of both origins.
  UpwardRay c{pt(0, 0), pt(1, 1)};
  UpwardRay d{pt(3, 0), pt(4, 2)};
  CHECK(rays_intersect(c, d));
  CHECK(*ray_crossing(c, d) == pt(6, 6));

  // Same lines, but the second ray started past the crossing: behind one origin.
  UpwardRay e{pt(7, 8), pt(8, 10)};
  CHECK_FALSE(rays_intersect(c, e));

  // Collinear upward rays always meet; the crossing is the higher origin.
  UpwardRay f{pt(2, 2), pt(4, 4)};
  CHECK(rays_intersect(c, f));
  CHECK(rays_intersect(f, c));
  CHECK(*ray_crossing(c, f) == pt(2, 2));
}

TEST_CASE("segment graph equals ray graph under the transformation") {
  std::mt19937_64 rng(47);
  for (int iter = 0; iter < 200; ++iter) {
    auto segs = oracles::random_grounded_segments(8, rng);
    std::vector<UpwardRay> rays;
    for (const auto& s : segs) rays.push_back(to_upward_ray(s));
    for (std::size_t i = 0; i < segs.size(); ++i)
      for (std::size_t j = i + 1; j < segs.size(); ++j) {
        bool sg = segments_intersect(segs[i], segs[j]);
        bool rg = rays_intersect(rays[i], rays[j]);
        REQUIRE(sg == rg);
      }
  }
}

TEST_CASE("disk predicates with tolerance") {
  Disk d{0.0, 0.0, 1.0};
  Disk e{2.0 + 1e-9, 0.0, 1.0};
  CHECK(disks_intersect(d, e, 1e-6));
  CHECK_FALSE(disks_intersect(d, e, 0.0));
  CHECK(point_in_disk(d, 0.5, 0.5, 0.0));
  CHECK_FALSE(point_in_disk(d, 1.2, 0.0, 0.0));
  CHECK(point_in_disk(d, 1.2, 0.0, 0.25));
}
