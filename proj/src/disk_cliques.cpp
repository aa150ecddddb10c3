#include "geoclique/disk_cliques.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geoclique/clique_solvers.hpp"

namespace geoclique {

void validate(const DiskInstance& inst) {
  if (!(inst.r_min > 0.0) || !(inst.r_max >= inst.r_min))
    throw std::invalid_argument("DiskInstance: bad radius bounds");
  for (std::size_t i = 0; i < inst.disks.size(); ++i) {
    double r = inst.disks[i].r;
    if (!(r >= inst.r_min) || !(r <= inst.r_max))
      throw std::invalid_argument("DiskInstance: disk " + std::to_string(i) +
                                  " radius outside declared bounds");
  }
}

NotPairwiseIntersecting::NotPairwiseIntersecting(int a_, int b_)
    : std::invalid_argument("disks " + std::to_string(a_) + " and " + std::to_string(b_) +
                            " do not intersect"),
      a(a_),
      b(b_) {}

PiercingVerificationFailed::PiercingVerificationFailed(int d)
    : std::runtime_error("piercing points missed disk " + std::to_string(d)), disk(d) {}

namespace {

// size first, then lexicographically smallest; both sides sorted ascending
bool better_clique(const std::vector<int>& cand, const std::vector<int>& best) {
  if (cand.size() != best.size()) return cand.size() > best.size();
  return cand < best;
}

}  // namespace

std::vector<int> grounded_disk_max_clique(const std::vector<GroundedDisk>& disks) {
  const int n = static_cast<int>(disks.size());
  for (const GroundedDisk& d : disks) validate(d);
  if (n == 0) return {};

  std::vector<int> best;
  for (int d = 0; d < n; ++d) {
    // Any clique whose smallest member is d, under the (radius, index) order.
    std::vector<int> verts{d};
    for (int e = 0; e < n; ++e) {
      if (e == d) continue;
      if (disks[e].radius < disks[d].radius) continue;
      if (disks[e].radius == disks[d].radius && e < d) continue;
      if (grounded_disks_intersect(disks[d], disks[e])) verts.push_back(e);
    }
    const int m = static_cast<int>(verts.size());
    Graph g(m);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (grounded_disks_intersect(disks[verts[i]], disks[verts[j]])) g.add_edge(i, j);

    std::vector<int> side_a{0}, side_b;  // d itself counts as a left disk
    for (int p = 1; p < m; ++p) {
      if (disks[verts[p]].center_x <= disks[d].center_x)
        side_a.push_back(p);
      else
        side_b.push_back(p);
    }
    // SidesNotCliques out of this call would disprove the side argument.
    std::vector<int> got = cobipartite_max_clique(g, side_a, side_b);
    for (int& v : got) v = verts[v];
    std::sort(got.begin(), got.end());
    if (better_clique(got, best)) best = got;
  }
  return best;
}

double reach_radius(const std::vector<Disk>& disks, double x, double y) {
  if (disks.empty()) throw std::invalid_argument("reach_radius: no disks");
  double worst = -std::numeric_limits<double>::infinity();
  for (const Disk& d : disks) worst = std::max(worst, std::hypot(x - d.cx, y - d.cy) - d.r);
  return worst;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
  double x;
  double y;
};

double reach(const std::vector<Disk>& disks, Vec2 q) { return reach_radius(disks, q.x, q.y); }

// Shrinking 8-direction probe; moves to the best improving neighbor, halves
// the step when none improves. Convexity of the objective makes the probe
// budget generous.
Vec2 compass_descent(const std::vector<Disk>& disks, Vec2 q, double step, double min_step) {
  static const double kD = 0.70710678118654752;
  static const Vec2 dirs[8] = {{1, 0},   {-1, 0}, {0, 1},   {0, -1},
                               {kD, kD}, {kD, -kD}, {-kD, kD}, {-kD, -kD}};
  double fq = reach(disks, q);
  int budget = 200000;
  while (step > min_step && budget-- > 0) {
    Vec2 best = q;
    double fbest = fq;
    for (const Vec2& d : dirs) {
      Vec2 p{q.x + step * d.x, q.y + step * d.y};
      double fp = reach(disks, p);
      if (fp < fbest) {
        fbest = fp;
        best = p;
      }
    }
    if (fbest < fq) {
      q = best;
      fq = fbest;
    } else {
      step *= 0.5;
    }
  }
  return q;
}

// Points whose reach to all three disks is equal: subtracting the squared
// reach equations pairwise leaves a 2x2 linear system in the point for each
// value t of the common reach, and substituting back gives one quadratic in
// t. Degenerate systems yield no candidates; callers only ever treat the
// output as extra argmin candidates, so that is safe.
void push_equalizers(const Disk& a, const Disk& b, const Disk& c, std::vector<Vec2>& out) {
  double r11 = 2 * (a.cx - b.cx), r12 = 2 * (a.cy - b.cy);
  double r21 = 2 * (a.cx - c.cx), r22 = 2 * (a.cy - c.cy);
  double det = r11 * r22 - r12 * r21;
  if (!(std::abs(det) > 1e-30)) return;
  double k1 = (a.cx * a.cx + a.cy * a.cy) - (b.cx * b.cx + b.cy * b.cy) - a.r * a.r + b.r * b.r;
  double k2 = (a.cx * a.cx + a.cy * a.cy) - (c.cx * c.cx + c.cy * c.cy) - a.r * a.r + c.r * c.r;
  double m1 = 2 * (a.r - b.r), m2 = 2 * (a.r - c.r);
  Vec2 u{(k1 * r22 - k2 * r12) / det, (r11 * k2 - r21 * k1) / det};
  Vec2 v{(-m1 * r22 + m2 * r12) / det, (-r11 * m2 + r21 * m1) / det};

  double wx = u.x - a.cx, wy = u.y - a.cy;
  double qa = v.x * v.x + v.y * v.y - 1.0;
  double qb = 2.0 * (wx * v.x + wy * v.y - a.r);
  double qc = wx * wx + wy * wy - a.r * a.r;

  auto emit = [&](double t) {
    Vec2 p{u.x + t * v.x, u.y + t * v.y};
    if (std::isfinite(p.x) && std::isfinite(p.y)) out.push_back(p);
  };
  if (std::abs(qa) < 1e-14) {
    if (std::abs(qb) > 1e-30) emit(-qc / qb);
    return;
  }
  double disc = qb * qb - 4 * qa * qc;
  if (disc < 0) return;
  double root = std::sqrt(disc);
  double s = (qb >= 0 ? -(qb + root) : -(qb - root)) / 2.0;
  if (std::abs(qa) > 1e-30) emit(s / qa);
  if (std::abs(s) > 1e-30) emit(qc / s);
}

// Disks within `band` of the worst reach at q, tightest first, index ties
// ascending.
std::vector<int> snap_basis(const std::vector<Disk>& disks, Vec2 q, double band) {
  double worst = reach(disks, q);
  std::vector<std::pair<double, int>> tight;
  for (int i = 0; i < static_cast<int>(disks.size()); ++i) {
    double phi = std::hypot(q.x - disks[i].cx, q.y - disks[i].cy) - disks[i].r;
    if (phi >= worst - band) tight.push_back({-phi, i});
  }
  std::sort(tight.begin(), tight.end());
  std::vector<int> out;
  for (const auto& [negphi, i] : tight) out.push_back(i);
  return out;
}

}  // namespace

IntersectingCircle smallest_intersecting_circle(const std::vector<Disk>& disks, double tol) {
  const int n = static_cast<int>(disks.size());
  if (n == 0) throw std::invalid_argument("smallest_intersecting_circle: no disks");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!disks_intersect(disks[i], disks[j], tol)) throw NotPairwiseIntersecting(i, j);

  Vec2 centroid{0, 0};
  for (const Disk& d : disks) {
    centroid.x += d.cx / n;
    centroid.y += d.cy / n;
  }
  double spread = 1.0;
  for (const Disk& d : disks)
    spread = std::max(spread, std::hypot(centroid.x - d.cx, centroid.y - d.cy) + d.r);

  Vec2 best = centroid;
  double fbest = reach(disks, best);
  auto consider = [&](Vec2 q) {
    double f = reach(disks, q);
    if (f < fbest) {
      fbest = f;
      best = q;
    }
  };
  consider(compass_descent(disks, centroid, spread, tol * 1e-3));
  for (const Disk& d : disks) consider(compass_descent(disks, {d.cx, d.cy}, spread, tol * 1e-3));

  // Two polish rounds: equalize the snapped basis (or basis pair completed by
  // every third disk) and keep whatever evaluates lower.
  for (int round = 0; round < 2 && fbest > tol; ++round) {
    std::vector<int> tight = snap_basis(disks, best, 10 * tol);
    if (tight.size() > 5) tight.resize(5);
    std::vector<Vec2> cands;
    if (tight.size() >= 3) {
      for (std::size_t i = 0; i < tight.size(); ++i)
        for (std::size_t j = i + 1; j < tight.size(); ++j)
          for (std::size_t k = j + 1; k < tight.size(); ++k)
            push_equalizers(disks[tight[i]], disks[tight[j]], disks[tight[k]], cands);
    } else if (tight.size() == 2) {
      for (int k = 0; k < n; ++k)
        if (k != tight[0] && k != tight[1])
          push_equalizers(disks[tight[0]], disks[tight[1]], disks[k], cands);
    }
    for (Vec2 q : cands) consider(q);
  }

  IntersectingCircle out;
  out.cx = best.x;
  out.cy = best.y;
  out.radius = std::max(0.0, fbest);
  out.basis = snap_basis(disks, best, 10 * tol);
  if (out.basis.size() > 3) out.basis.resize(3);
  return out;
}

PiercingCheck verify_piercing(const std::vector<Disk>& disks,
                              const std::vector<std::array<double, 2>>& points, double tol) {
  for (int i = 0; i < static_cast<int>(disks.size()); ++i) {
    bool hit = false;
    for (const auto& p : points)
      if (point_in_disk(disks[i], p[0], p[1], tol)) {
        hit = true;
        break;
      }
    if (!hit) return {false, i};
  }
  return {true, -1};
}

namespace {

// clockwise gap from direction `from` to direction `to`, in [0, 2 pi)
double cw_gap(double from, double to) {
  double g = from - to;
  while (g < 0) g += 2 * kPi;
  while (g >= 2 * kPi) g -= 2 * kPi;
  return g;
}

// The fixed piercing triangle for a non-Helly triple: label the tight disks
// bottom/left/right so that going clockwise around the circle reads b, l, r
// and the l-to-r gap is the smallest (near-ties settle on disk indices),
// rotate bottom to point straight down, and place the canonical points.
// Returns world points; `angle_out` reports the rotation used.
std::array<Vec2, 3> piercing_triangle(const std::vector<Disk>& disks, Vec2 o,
                                      const std::array<int, 3>& triple, double* angle_out) {
  double ang[3];
  for (int k = 0; k < 3; ++k)
    ang[k] = std::atan2(disks[triple[k]].cy - o.y, disks[triple[k]].cx - o.x);

  int bl = -1, br = -1;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int f = 0; f < 3; ++f)
    for (int t = 0; t < 3; ++t) {
      if (f == t) continue;
      double g = cw_gap(ang[f], ang[t]);
      bool wins = g < best_gap - 1e-9;
      if (!wins && g < best_gap + 1e-9)
        wins = std::make_pair(triple[f], triple[t]) < std::make_pair(triple[bl], triple[br]);
      if (wins) {
        best_gap = g;
        bl = f;
        br = t;
      }
    }
  int bb = 3 - bl - br;  // the remaining position is the bottom disk

  double delta = -kPi / 2 - ang[bb];  // rotate bottom direction onto -y
  if (angle_out) *angle_out = delta;
  double cd = std::cos(delta), sd = std::sin(delta);
  auto to_world = [&](double px, double py) {
    // inverse rotation, then translate back to the circle center
    return Vec2{o.x + cd * px + sd * py, o.y - sd * px + cd * py};
  };
  const double s3 = std::sqrt(3.0);
  return {to_world(0.0, -1.0 / s3), to_world(0.5, 1.0 / (2 * s3)), to_world(-0.5, 1.0 / (2 * s3))};
}

}  // namespace

PiercingTriple piercing_points(const std::vector<Disk>& disks, double tol) {
  const int n = static_cast<int>(disks.size());
  if (n == 0) throw std::invalid_argument("piercing_points: no disks");
  double rho = disks[0].r, rmax = disks[0].r;
  for (const Disk& d : disks) {
    rho = std::min(rho, d.r);
    rmax = std::max(rmax, d.r);
  }
  if (!(rho > 0) || rmax > 3 * rho * (1 + 1e-9))
    throw std::invalid_argument("piercing_points: radius spread exceeds 3x");

  std::vector<Disk> scaled;
  scaled.reserve(n);
  for (const Disk& d : disks) scaled.push_back({d.cx / rho, d.cy / rho, d.r / rho});
  double tol_s = tol / rho;  // tol is in input units; everything here is scaled

  IntersectingCircle q = smallest_intersecting_circle(scaled, tol_s);
  PiercingTriple out;
  out.frame = {q.cx, q.cy, 0.0, rho};
  if (q.radius <= tol_s) {
    out.points = {{q.cx * rho, q.cy * rho}};
  } else {
    std::array<int, 3> triple{};
    if (q.basis.size() >= 3) {
      triple = {q.basis[0], q.basis[1], q.basis[2]};
    } else if (q.basis.size() == 2) {
      // Thin numeric basis: the circle is still inscribed in some triple
      // through the tight pair, recognizable as the third disk maximizing
      // the triple's own circle radius.
      int best_k = -1;
      double best_r = -1;
      for (int k = 0; k < n; ++k) {
        if (k == q.basis[0] || k == q.basis[1]) continue;
        IntersectingCircle tc =
            smallest_intersecting_circle({scaled[q.basis[0]], scaled[q.basis[1]], scaled[k]}, tol_s);
        if (tc.radius > best_r + 1e-15) {
          best_r = tc.radius;
          best_k = k;
        }
      }
      if (best_k < 0) throw std::logic_error("piercing_points: no completing triple");
      triple = {q.basis[0], q.basis[1], best_k};
    } else {
      throw std::logic_error("piercing_points: positive radius with a degenerate basis");
    }
    std::sort(triple.begin(), triple.end());
    auto pts = piercing_triangle(scaled, {q.cx, q.cy}, triple, &out.frame.angle);
    out.points = {{pts[0].x * rho, pts[0].y * rho},
                  {pts[1].x * rho, pts[1].y * rho},
                  {pts[2].x * rho, pts[2].y * rho}};
  }

  PiercingCheck chk = verify_piercing(disks, out.points, tol);
  if (!chk.ok) throw PiercingVerificationFailed(chk.first_failure);
  return out;
}

namespace {

// Boundary crossings of two circles (0, 1, or 2 points); near-tangent pairs
// within tol collapse to the single touching point.
void push_boundary_crossings(const Disk& a, const Disk& b, double tol, std::vector<Vec2>& out) {
  double dx = b.cx - a.cx, dy = b.cy - a.cy;
  double d = std::hypot(dx, dy);
  if (!(d > 1e-12)) return;  // concentric
  double t = (d * d + a.r * a.r - b.r * b.r) / (2 * d);
  double h2 = a.r * a.r - t * t;
  if (h2 < 0) {
    bool near_tangent = d <= a.r + b.r + tol && d + tol >= std::abs(a.r - b.r);
    if (!near_tangent) return;
    h2 = 0;
  }
  double h = std::sqrt(h2);
  double ux = dx / d, uy = dy / d;
  out.push_back({a.cx + t * ux - h * uy, a.cy + t * uy + h * ux});
  if (h > 0) out.push_back({a.cx + t * ux + h * uy, a.cy + t * uy - h * ux});
}

}  // namespace

std::vector<int> approx_disk_clique(const DiskInstance& inst, double tol) {
  validate(inst);
  if (inst.r_max > 3 * inst.r_min * (1 + 1e-9))
    throw std::invalid_argument("approx_disk_clique: radius spread exceeds 3x");
  const int n = static_cast<int>(inst.disks.size());
  if (n == 0) return {};

  // Everything below runs with radii scaled into [1, 3] and tol scaled to
  // match, so the edge set equals the unscaled one; results are index sets,
  // so nothing maps back.
  std::vector<Disk> d;
  d.reserve(n);
  for (const Disk& orig : inst.disks)
    d.push_back({orig.cx / inst.r_min, orig.cy / inst.r_min, orig.r / inst.r_min});
  tol /= inst.r_min;

  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (disks_intersect(d[i], d[j], tol)) g.add_edge(i, j);

  std::vector<int> best;
  auto keep = [&](std::vector<int> clique) {
    std::sort(clique.begin(), clique.end());
    if (better_clique(clique, best)) best = std::move(clique);
  };
  auto containers = [&](Vec2 p) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (point_in_disk(d[i], p.x, p.y, tol / 2)) s.push_back(i);
    return s;
  };

  std::vector<Vec2> cands;
  for (const Disk& disk : d) cands.push_back({disk.cx, disk.cy});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) push_boundary_crossings(d[i], d[j], tol, cands);
  for (Vec2 p : cands) keep(containers(p));

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!g.has_edge(i, j)) continue;
      for (int k = j + 1; k < n; ++k) {
        if (!g.has_edge(i, k) || !g.has_edge(j, k)) continue;
        IntersectingCircle tc = smallest_intersecting_circle({d[i], d[j], d[k]}, tol);
        if (tc.radius <= tol) continue;  // the triple shares a point

        auto pts = piercing_triangle(d, {tc.cx, tc.cy}, {i, j, k}, nullptr);
        for (int p1 = 0; p1 < 3; ++p1)
          for (int p2 = p1 + 1; p2 < 3; ++p2) {
            std::vector<int> in1 = containers(pts[p1]);
            std::vector<int> in2 = containers(pts[p2]);
            std::vector<char> used(n, 0);
            std::vector<int> verts, side_a, side_b;
            for (int v : in1) {
              side_a.push_back(static_cast<int>(verts.size()));
              verts.push_back(v);
              used[v] = 1;
            }
            for (int v : in2) {
              if (used[v]) continue;  // both points: stays on the first side
              side_b.push_back(static_cast<int>(verts.size()));
              verts.push_back(v);
            }
            if (verts.empty()) continue;
            Graph sub = g.induced(verts);
            std::vector<int> got = cobipartite_max_clique(sub, side_a, side_b);
            for (int& v : got) v = verts[v];
            keep(std::move(got));
          }
      }
    }

  if (!g.is_clique(best)) throw std::logic_error("approx_disk_clique: result is not a clique");
  return best;
}

}  // namespace geoclique
