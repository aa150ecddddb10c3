#include "geoclique/geometry.hpp"

#include <sstream>

namespace geoclique {

Rational Rational::from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Rational: empty string");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: bad literal '" + s + "'");
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
  q.canonicalize();
  return Rational(q);
}

Rational Rational::from_double(double x) {
  return Rational(mpq_class(x));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

std::size_t Rational::bit_length() const {
  std::size_t nb = mpz_sizeinbase(v_.get_num().get_mpz_t(), 2);
  std::size_t db = mpz_sizeinbase(v_.get_den().get_mpz_t(), 2);
  return nb > db ? nb : db;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.v_;
}

Rational pow2(long e) {
  mpq_class q(1);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
  }
  return Rational(q);
}

int orient(const Point& p, const Point& q, const Point& r) {
  return cross(q - p, r - p).sign();
}

namespace {

// pre: r collinear with [a, b]; is it inside the closed box of the segment?
bool collinear_on_segment(const Point& a, const Point& b, const Point& r) {
  return min(a.x, b.x) <= r.x && r.x <= max(a.x, b.x) &&
         min(a.y, b.y) <= r.y && r.y <= max(a.y, b.y);
}

}  // namespace

bool segments_intersect(const Segment& s, const Segment& t) {
  const Point &p1 = s.a, &p2 = s.b, &q1 = t.a, &q2 = t.b;
  int o1 = orient(p1, p2, q1);
  int o2 = orient(p1, p2, q2);
  int o3 = orient(q1, q2, p1);
  int o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && collinear_on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && collinear_on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && collinear_on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && collinear_on_segment(q1, q2, p2)) return true;
  return false;
}

namespace {

// Scale (a, b, c) to coprime integers with the first nonzero of (a, b)
// positive, so equal lines get identical coefficient triples.
LineEq canonical_line(Rational a, Rational b, Rational c) {
  mpz_class l = lcm(a.den(), b.den());
  l = lcm(l, c.den());
  mpz_class an = a.num() * (l / a.den());
  mpz_class bn = b.num() * (l / b.den());
  mpz_class cn = c.num() * (l / c.den());
  mpz_class g = gcd(gcd(abs(an), abs(bn)), abs(cn));
  if (g == 0) throw std::invalid_argument("canonical_line: zero normal");
  an /= g;
  bn /= g;
  cn /= g;
  int lead = sgn(an) != 0 ? sgn(an) : sgn(bn);
  if (lead == 0) throw std::invalid_argument("canonical_line: zero normal");
  if (lead < 0) {
    an = -an;
    bn = -bn;
    cn = -cn;
  }
  return {Rational(an), Rational(bn), Rational(cn)};
}

}  // namespace

LineEq make_line(const Rational& a, const Rational& b, const Rational& c) {
  return canonical_line(a, b, c);
}

LineEq line_through(const Point& p, const Point& q) {
  if (p == q) throw std::invalid_argument("line_through: coincident points");
  Point d = q - p;
  Rational a = d.y;
  Rational b = -d.x;
  Rational c = a * p.x + b * p.y;
  return canonical_line(a, b, c);
}

bool on_line(const LineEq& l, const Point& p) {
  return l.a * p.x + l.b * p.y == l.c;
}

bool parallel(const LineEq& l, const LineEq& m) {
  return (l.a * m.b - m.a * l.b).is_zero();
}

std::optional<Point> line_intersection(const LineEq& l, const LineEq& m) {
  Rational det = l.a * m.b - m.a * l.b;
  if (det.is_zero()) return std::nullopt;
  Rational x = (l.c * m.b - m.c * l.b) / det;
  Rational y = (l.a * m.c - m.a * l.c) / det;
  return Point{x, y};
}

void validate(const GroundedSegment& s) {
  if (s.free_end.y.sign() <= 0)
    throw std::invalid_argument("GroundedSegment: free endpoint must lie strictly above the ground");
}

LineEq supporting_line(const GroundedSegment& s) {
  return line_through(s.ground_point(), s.free_end);
}

bool segments_intersect(const GroundedSegment& s, const GroundedSegment& t) {
  return segments_intersect(s.as_segment(), t.as_segment());
}

bool strictly_independent(const GroundedSegment& s, const GroundedSegment& t) {
  if (s.ground_x == t.ground_x)
    throw std::invalid_argument("strictly_independent: segments share a ground point");
  auto x = line_intersection(supporting_line(s), supporting_line(t));
  if (!x) return false;
  // Along ground -> free the y-coordinate runs 0 -> free_end.y, so parameter
  // t > 1 on both extensions is exactly y(X) above both free endpoints. That
  // also puts X off both segments, hence they are disjoint.
  return x->y > s.free_end.y && x->y > t.free_end.y;
}

bool strictly_independent(const GroundedSegment& s, const GroundedSegment& t, const LineEq& ground) {
  static const LineEq x_axis = canonical_line(Rational(0), Rational(1), Rational(0));
  if (ground != x_axis)
    throw std::invalid_argument("strictly_independent: ground line must be y = 0");
  return strictly_independent(s, t);
}

void validate(const UpwardRay& r) {
  if (!(r.through.y > r.origin.y))
    throw std::invalid_argument("UpwardRay: second point must lie strictly above the origin");
}

LineEq supporting_line(const UpwardRay& r) {
  return line_through(r.origin, r.through);
}

bool rays_intersect(const UpwardRay& r, const UpwardRay& s) {
  Point dr = r.direction();
  Point ds = s.direction();
  Rational det = cross(dr, ds);
  Point w = s.origin - r.origin;
  if (det.is_zero()) {
    // Parallel. Both directions point upward, so collinear rays overlap.
    return cross(dr, w).is_zero();
  }
  // r.origin + t*dr = s.origin + u*ds
  Rational t = cross(w, ds) / det;
  Rational u = cross(w, dr) / det;
  return t.sign() >= 0 && u.sign() >= 0;
}

std::optional<Point> ray_crossing(const UpwardRay& r, const UpwardRay& s) {
  Point dr = r.direction();
  Point ds = s.direction();
  Rational det = cross(dr, ds);
  Point w = s.origin - r.origin;
  if (det.is_zero()) {
    if (!cross(dr, w).is_zero()) return std::nullopt;
    return r.origin.y >= s.origin.y ? r.origin : s.origin;
  }
  Rational t = cross(w, ds) / det;
  Rational u = cross(w, dr) / det;
  if (t.sign() < 0 || u.sign() < 0) return std::nullopt;
  return Point{r.origin.x + t * dr.x, r.origin.y + t * dr.y};
}

Point involute(const Point& p) {
  if (p.y.is_zero()) throw std::invalid_argument("involute: point on the ground line");
  return {p.x / p.y, Rational(1) / p.y};
}

LineEq involute(const LineEq& l) {
  if (l.a.is_zero() && l.c.is_zero())
    throw std::invalid_argument("involute: the ground line has no image");
  return canonical_line(l.a, -l.c, -l.b);
}

UpwardRay to_upward_ray(const GroundedSegment& s) {
  validate(s);
  // The ground endpoint goes to infinity; the image of the free endpoint is
  // the origin and the image of the segment's midpoint fixes the direction.
  Point origin = involute(s.free_end);
  Rational half(1, 2);
  Point mid{(s.ground_x + s.free_end.x) * half, s.free_end.y * half};
  Point through = involute(mid);
  UpwardRay r{origin, through};
  validate(r);
  return r;
}

void validate(const GroundedDisk& d) {
  if (d.radius.sign() <= 0) throw std::invalid_argument("GroundedDisk: radius must be positive");
}

bool grounded_disks_intersect(const GroundedDisk& d, const GroundedDisk& e) {
  Rational dx = d.center_x - e.center_x;
  return dx * dx <= Rational(4) * d.radius * e.radius;
}

bool disks_intersect(const Disk& d, const Disk& e, double tol) {
  double dx = d.cx - e.cx;
  double dy = d.cy - e.cy;
  double rr = d.r + e.r + tol;
  return dx * dx + dy * dy <= rr * rr;
}

bool point_in_disk(const Disk& d, double px, double py, double tol) {
  double dx = d.cx - px;
  double dy = d.cy - py;
  double rr = d.r + tol;
  return dx * dx + dy * dy <= rr * rr;
}

}  // namespace geoclique
