#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "geoclique/rational.hpp"

namespace geoclique {

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; }
  friend bool operator!=(const Point& p, const Point& q) { return !(p == q); }
  // Lexicographic, for canonical ordering and dedup.
  friend bool operator<(const Point& p, const Point& q) {
    if (p.x != q.x) return p.x < q.x;
    return p.y < q.y;
  }
  friend Point operator+(const Point& p, const Point& q) { return {p.x + q.x, p.y + q.y}; }
  friend Point operator-(const Point& p, const Point& q) { return {p.x - q.x, p.y - q.y}; }
};

inline Rational cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
inline Rational dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }

// Sign of the signed area of the triangle (p, q, r):
// +1 if r lies left of the directed line p->q, -1 if right, 0 if collinear.
int orient(const Point& p, const Point& q, const Point& r);

struct Segment {
  Point a;
  Point b;
};

// Closed-segment intersection test; handles all degeneracies (shared
// endpoints, endpoint on interior, collinear overlap) exactly.
bool segments_intersect(const Segment& s, const Segment& t);

// Line a*x + b*y = c with integer coefficients in canonical form:
// gcd(|a|,|b|,|c|) = 1 and the first nonzero of (a, b) is positive.
// Two LineEq values compare equal iff they describe the same line.
struct LineEq {
  Rational a;
  Rational b;
  Rational c;

  friend bool operator==(const LineEq& l, const LineEq& m) {
    return l.a == m.a && l.b == m.b && l.c == m.c;
  }
  friend bool operator!=(const LineEq& l, const LineEq& m) { return !(l == m); }
};

// Canonicalizes arbitrary rational coefficients; (a, b) must not both be zero.
LineEq make_line(const Rational& a, const Rational& b, const Rational& c);
LineEq line_through(const Point& p, const Point& q);  // pre: p != q
bool on_line(const LineEq& l, const Point& p);
bool parallel(const LineEq& l, const LineEq& m);
// Unique intersection point, or nullopt when the lines are parallel
// (including identical).
std::optional<Point> line_intersection(const LineEq& l, const LineEq& m);

// Segment with one endpoint on the x-axis ("ground") and the other strictly
// above it. The ground line is always y = 0; instances living on some other
// horizontal line are translated before they get here.
struct GroundedSegment {
  Rational ground_x;  // touches the ground at (ground_x, 0)
  Point free_end;     // free_end.y > 0

  Point ground_point() const { return {ground_x, Rational(0)}; }
  Segment as_segment() const { return {ground_point(), free_end}; }
};

void validate(const GroundedSegment& s);  // throws std::invalid_argument

LineEq supporting_line(const GroundedSegment& s);

bool segments_intersect(const GroundedSegment& s, const GroundedSegment& t);

// True iff s and t are disjoint and their supporting lines cross at a point
// strictly beyond both free endpoints (parameter > 1 along ground -> free).
// Since y increases along that parametrization, this is equivalent to: the
// lines have a unique crossing X with X.y > s.free_end.y and X.y > t.free_end.y,
// which also forces disjointness. Parallel lines are never strictly
// independent. pre: distinct ground points.
bool strictly_independent(const GroundedSegment& s, const GroundedSegment& t);
// Variant that names the shared ground line explicitly; it must be y = 0.
bool strictly_independent(const GroundedSegment& s, const GroundedSegment& t, const LineEq& ground);

// Ray from origin through a second point strictly above it; extends upward
// without bound.
struct UpwardRay {
  Point origin;
  Point through;  // through.y > origin.y

  Point direction() const { return through - origin; }
};

void validate(const UpwardRay& r);  // throws std::invalid_argument

LineEq supporting_line(const UpwardRay& r);

// Closed intersection test. Collinear upward rays always meet (their
// directions are positive multiples of each other, so one contains the
// other's origin).
bool rays_intersect(const UpwardRay& r, const UpwardRay& s);

// Unique crossing point of two non-collinear rays, if the crossing lies on
// both (parameters >= 0); for collinear overlapping rays returns the higher
// origin, the first point they share.
std::optional<Point> ray_crossing(const UpwardRay& r, const UpwardRay& s);

// The projective map (x, y) -> (x/y, 1/y). It fixes incidence, sends lines to
// lines, and exchanges the strip 0 < y <= h with the region y >= 1/h; a
// segment grounded on y = 0 becomes an upward ray and vice versa.
Point involute(const Point& p);    // pre: p.y != 0
LineEq involute(const LineEq& l);  // (a,b,c) -> (a,-c,-b); pre: l is not y = 0 itself
UpwardRay to_upward_ray(const GroundedSegment& s);

// Disk tangent to the ground line y = 0 from above: center (center_x, radius).
struct GroundedDisk {
  Rational center_x;
  Rational radius;  // > 0

  Point center() const { return {center_x, radius}; }
};

void validate(const GroundedDisk& d);  // throws std::invalid_argument

// Closed intersection: dist(centers) <= r1 + r2, which for disks tangent to a
// common line from the same side reduces to (x1 - x2)^2 <= 4 r1 r2.
bool grounded_disks_intersect(const GroundedDisk& d, const GroundedDisk& e);

// General disk with inexact coordinates; predicates on these take an explicit
// tolerance.
struct Disk {
  double cx;
  double cy;
  double r;  // > 0
};

// dist(centers) <= r1 + r2 + tol.
bool disks_intersect(const Disk& d, const Disk& e, double tol);

bool point_in_disk(const Disk& d, double px, double py, double tol);

}  // namespace geoclique
