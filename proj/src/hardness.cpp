#include "geoclique/hardness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geoclique/rational.hpp"

namespace geoclique {

namespace {

Point scaled(const Point& p, const Rational& t) { return {p.x * t, p.y * t}; }

std::size_t bit_count(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

void absorb_bits(LevelBits& lb, const UpwardRay& r) {
  for (const Point* p : {&r.origin, &r.through}) {
    lb.num_bits = std::max({lb.num_bits, bit_count(p->x.num()), bit_count(p->y.num())});
    lb.den_bits = std::max({lb.den_bits, bit_count(p->x.den()), bit_count(p->y.den())});
  }
}

Rational param_at(const UpwardRay& r, const Point& p) {
  // p is on the supporting line; direction().y > 0 for upward rays
  return (p.y - r.origin.y) / r.direction().y;
}

// y-coordinate of the supporting line of r at abscissa x; rays here never
// run vertically
Rational line_y_at(const UpwardRay& r, const Rational& x) {
  const Point d = r.direction();
  return r.origin.y + (x - r.origin.x) * d.y / d.x;
}

bool confirmed(int v, const UpwardRay& nr, const std::vector<int>& placed,
               const std::vector<UpwardRay>& rays, const Graph& want) {
  for (int e_id : placed) {
    if (nr.origin == rays[e_id].origin) return false;
    if (rays_intersect(nr, rays[e_id]) != want.has_edge(v, e_id)) return false;
  }
  return true;
}

// Along each member, the crossings with the other members must appear in
// sail order; this is exactly the outerpath property.
bool sail_order_ok(const std::vector<UpwardRay>& rays, const std::vector<int>& sail) {
  for (std::size_t i = 0; i < sail.size(); ++i) {
    std::optional<Rational> prev;
    for (std::size_t j = 0; j < sail.size(); ++j) {
      if (j == i) continue;
      auto x = ray_crossing(rays[sail[i]], rays[sail[j]]);
      if (!x) return false;
      Rational t = param_at(rays[sail[i]], *x);
      if (prev && !(*prev < t)) return false;
      prev = t;
    }
  }
  return true;
}

struct LevelIndex {
  std::vector<int> level;  // 1-based tree level
  std::vector<int> pos;    // position within the level order
};

LevelIndex level_index(const TreeSpec& t, const std::vector<std::vector<int>>& levels) {
  LevelIndex idx{std::vector<int>(t.node_count, 0), std::vector<int>(t.node_count, 0)};
  for (std::size_t j = 0; j < levels.size(); ++j)
    for (std::size_t i = 0; i < levels[j].size(); ++i) {
      idx.level[levels[j][i]] = static_cast<int>(j) + 1;
      idx.pos[levels[j][i]] = static_cast<int>(i);
    }
  return idx;
}

struct PathInfo {
  int a = 0, d = 0;    // endpoint leaves, a first in the level order
  int b = -1, c = -1;  // interiors next to a and to d; c = -1 on 3-vertex paths
};

std::vector<PathInfo> path_infos(const ExtensionSpec& p, const LevelIndex& idx) {
  std::vector<PathInfo> out;
  for (const auto& path : p.paths) {
    PathInfo info;
    bool flip = idx.pos[path.front()] > idx.pos[path.back()];
    info.a = flip ? path.back() : path.front();
    info.d = flip ? path.front() : path.back();
    if (path.size() == 3) {
      info.b = path[1];
    } else {
      info.b = flip ? path[2] : path[1];
      info.c = flip ? path[1] : path[2];
    }
    out.push_back(info);
  }
  return out;
}

double orient_d(double ax, double ay, double bx, double by, double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

bool segments_meet_d(const StabbedSegment& s, const StabbedSegment& t) {
  double o1 = orient_d(s.ax, s.ay, s.bx, s.by, t.ax, t.ay);
  double o2 = orient_d(s.ax, s.ay, s.bx, s.by, t.bx, t.by);
  double o3 = orient_d(t.ax, t.ay, t.bx, t.by, s.ax, s.ay);
  double o4 = orient_d(t.ax, t.ay, t.bx, t.by, s.bx, s.by);
  return ((o1 < 0) != (o2 < 0)) && ((o3 < 0) != (o4 < 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
         o4 != 0;
}

double point_segment_dist_d(double px, double py, double ax, double ay, double bx, double by) {
  double dx = bx - ax, dy = by - ay;
  double t = ((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy);
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (ax + t * dx), py - (ay + t * dy));
}

double pair_distance_d(const StabbedSegment& s, const StabbedSegment& t) {
  if (segments_meet_d(s, t)) return 0.0;
  double d = point_segment_dist_d(s.ax, s.ay, t.ax, t.ay, t.bx, t.by);
  d = std::min(d, point_segment_dist_d(s.bx, s.by, t.ax, t.ay, t.bx, t.by));
  d = std::min(d, point_segment_dist_d(t.ax, t.ay, s.ax, s.ay, s.bx, s.by));
  d = std::min(d, point_segment_dist_d(t.bx, t.by, s.ax, s.ay, s.bx, s.by));
  return d;
}

}  // namespace

void validate(const TreeSpec& t) {
  if (t.node_count <= 0) throw std::invalid_argument("tree: node_count must be positive");
  if (t.root < 0 || t.root >= t.node_count)
    throw std::invalid_argument("tree: root out of range");
  if (static_cast<int>(t.children.size()) != t.node_count)
    throw std::invalid_argument("tree: children must list every vertex");
  std::vector<int> indeg(t.node_count, 0);
  for (int u = 0; u < t.node_count; ++u)
    for (int v : t.children[u]) {
      if (v < 0 || v >= t.node_count)
        throw std::invalid_argument("tree: child id out of range");
      ++indeg[v];
    }
  if (indeg[t.root] != 0) throw std::invalid_argument("tree: root cannot be a child");
  for (int v = 0; v < t.node_count; ++v)
    if (v != t.root && indeg[v] != 1)
      throw std::invalid_argument("tree: vertex " + std::to_string(v) +
                                  " needs exactly one parent");
  int reached = 0;
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++reached;
    for (int v : t.children[u]) stack.push_back(v);
  }
  if (reached != t.node_count) throw std::invalid_argument("tree: not connected");
}

std::vector<std::vector<int>> tree_levels(const TreeSpec& t) {
  validate(t);
  std::vector<std::vector<int>> levels{{t.root}};
  while (true) {
    std::vector<int> next;
    for (int u : levels.back()) next.insert(next.end(), t.children[u].begin(), t.children[u].end());
    if (next.empty()) break;
    levels.push_back(std::move(next));
  }
  return levels;
}

std::vector<std::string> validate_extension(const TreeSpec& t, const ExtensionSpec& p) {
  std::vector<std::string> out;
  try {
    validate(t);
  } catch (const std::invalid_argument& e) {
    out.emplace_back(e.what());
    return out;
  }
  const auto levels = tree_levels(t);
  const LevelIndex idx = level_index(t, levels);
  std::vector<int> interiors;
  std::vector<int> all_used;
  for (std::size_t pi = 0; pi < p.paths.size(); ++pi) {
    const auto& path = p.paths[pi];
    const std::string tag = "path " + std::to_string(pi) + ": ";
    if (path.size() != 3 && path.size() != 4) {
      out.push_back(tag + "must have 3 or 4 vertices");
      continue;
    }
    const int a = path.front(), d = path.back();
    bool ends_ok = true;
    for (int e : {a, d}) {
      if (e < 0 || e >= t.node_count) {
        out.push_back(tag + "endpoint " + std::to_string(e) + " is not a tree vertex");
        ends_ok = false;
      } else if (!t.children[e].empty()) {
        out.push_back(tag + "endpoint " + std::to_string(e) + " is not a leaf");
        ends_ok = false;
      }
    }
    if (ends_ok && a == d) {
      out.push_back(tag + "endpoints coincide");
      ends_ok = false;
    }
    if (ends_ok) {
      if (idx.level[a] != idx.level[d])
        out.push_back(tag + "endpoints lie on different levels");
      else if (idx.pos[a] - idx.pos[d] != 1 && idx.pos[d] - idx.pos[a] != 1)
        out.push_back(tag + "endpoint leaves are not consecutive in the level order");
    }
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      if (path[i] < t.node_count)
        out.push_back(tag + "interior vertex " + std::to_string(path[i]) +
                      " must be a new vertex id");
      else
        interiors.push_back(path[i]);
    }
    all_used.insert(all_used.end(), path.begin(), path.end());
  }
  std::sort(all_used.begin(), all_used.end());
  for (std::size_t i = 0; i + 1 < all_used.size(); ++i)
    if (all_used[i] == all_used[i + 1])
      out.push_back("vertex " + std::to_string(all_used[i]) + " appears in two paths");
  std::sort(interiors.begin(), interiors.end());
  for (std::size_t i = 0; i < interiors.size(); ++i)
    if (interiors[i] != t.node_count + static_cast<int>(i)) {
      out.push_back("interior vertex ids must be consecutive from " +
                    std::to_string(t.node_count));
      break;
    }
  return out;
}

int union_vertex_count(const TreeSpec& t, const ExtensionSpec& p) {
  int n = t.node_count;
  for (const auto& path : p.paths) n += static_cast<int>(path.size()) - 2;
  return n;
}

Graph union_graph(const TreeSpec& t, const ExtensionSpec& p) {
  const auto bad = validate_extension(t, p);
  if (!bad.empty()) throw std::invalid_argument("union_graph: " + bad.front());
  Graph g(union_vertex_count(t, p));
  for (int u = 0; u < t.node_count; ++u)
    for (int v : t.children[u]) g.add_edge(u, v);
  for (const auto& path : p.paths)
    for (std::size_t i = 0; i + 1 < path.size(); ++i) g.add_edge(path[i], path[i + 1]);
  return g;
}

ConstructionFailed::ConstructionFailed(const std::string& what) : std::runtime_error(what) {}

ConstructionFailed::ConstructionFailed(const std::string& what, int a, int b)
    : std::runtime_error(what + " (vertices " + std::to_string(a) + ", " + std::to_string(b) +
                         ")"),
      a(a),
      b(b) {}

RaySystem build_sail_skeleton(int k_prime) {
  if (k_prime < 1) throw std::invalid_argument("build_sail_skeleton: k_prime must be positive");
  const int k = 2 * k_prime;
  const Rational h = pow2(8 + k_prime);
  // odd rays lean left, even right; the pair k' + 1 - p keeps matching
  // slope magnitudes (2k'+1-p) * h that flatten with the pair index
  auto dir_of = [&](int id1) {
    int pair = (id1 + 1) / 2;
    return Point{Rational(id1 % 2 == 1 ? -1 : 1), Rational(2 * k_prime + 1 - pair) * h};
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<UpwardRay> rays;
    Point o0{Rational(0), Rational(0)};
    rays.push_back({o0, o0 + dir_of(1)});
    for (int id = 2; id <= k; ++id) {
      const UpwardRay& host = rays.back();
      const Point hd = host.direction();
      // start past every crossing on the host and higher than everything
      // placed, so the flatter ray sweeps back across all of it
      Rational y_max = o0.y;
      Rational t_hi(0);
      for (const UpwardRay& r : rays) y_max = max(y_max, r.origin.y);
      for (std::size_t i = 0; i + 1 < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
          if (auto x = ray_crossing(rays[i], rays[j])) y_max = max(y_max, x->y);
      for (std::size_t i = 0; i + 1 < rays.size(); ++i)
        if (auto x = ray_crossing(host, rays[i])) t_hi = max(t_hi, param_at(host, *x));
      Rational lo = max(t_hi, max((y_max - host.origin.y) / hd.y, Rational(0)));
      Rational tau = lo + max(Rational(1), lo) * pow2(-4 - attempt);
      Point q = host.origin + scaled(hd, tau);
      rays.push_back({q, q + dir_of(id)});
    }
    bool ok = true;
    for (int i = 0; ok && i < k; ++i)
      for (int j = i + 1; ok && j < k; ++j) ok = rays_intersect(rays[i], rays[j]);
    for (int i = 1; ok && i < k; ++i)
      ok = on_line(supporting_line(rays[i - 1]), rays[i].origin) &&
           !(param_at(rays[i - 1], rays[i].origin) < Rational(0));
    std::vector<int> lefts, rights;
    for (int i = 0; i < k; ++i) (i % 2 == 0 ? lefts : rights).push_back(i);
    ok = ok && sail_order_ok(rays, lefts) && sail_order_ok(rays, rights);
    if (!ok) continue;
    RaySystem rs;
    rs.rays = std::move(rays);
    for (int i = 1; i <= k; ++i) rs.labels.push_back("L" + std::to_string(i));
    rs.sails = {lefts, rights};
    rs.graph = intersection_graph(rs.rays);
    for (int pair = 1; pair <= k_prime; ++pair) {
      LevelBits lb{pair, 0, 0};
      absorb_bits(lb, rs.rays[2 * pair - 2]);
      absorb_bits(lb, rs.rays[2 * pair - 1]);
      rs.level_bits.push_back(lb);
    }
    return rs;
  }
  throw ConstructionFailed("sail skeleton: intersection properties failed after retries");
}

RaySystem build_upward_ray_complement(const TreeSpec& t, const ExtensionSpec& p) {
  {
    const auto bad = validate_extension(t, p);
    if (!bad.empty())
      throw std::invalid_argument("build_upward_ray_complement: " + bad.front());
  }
  const int n_tree = t.node_count;
  const int n = union_vertex_count(t, p);
  const Graph want = union_graph(t, p).complement();
  const auto levels = tree_levels(t);
  const LevelIndex idx = level_index(t, levels);
  const auto paths = path_infos(p, idx);

  // interiors hang off their endpoint leaves: the first one off the earlier
  // leaf, the second (parallel) one off the later leaf
  std::vector<std::array<int, 3>> attach_b(n_tree, {-1, -1, -1});  // b, d, 4-path?
  std::vector<std::array<int, 2>> attach_c(n_tree, {-1, -1});      // c, b
  for (const PathInfo& pi : paths) {
    attach_b[pi.a] = {pi.b, pi.d, pi.c >= 0 ? 1 : 0};
    if (pi.c >= 0) attach_c[pi.d] = {pi.c, pi.b};
  }

  // One bundle per level, swept in the order of the previous bundle. All
  // rays of a bundle point at a zone next to one far point on the bundle's
  // side, so the bundle is nearly a pencil: every pair crosses far beyond
  // everything built before. Origins sit low, inside an arrangement cell
  // over the host, so which earlier rays a member crosses is decided purely
  // by the side of each supporting line its origin lands on; the aim offset
  // within the zone is then solved per member to stack the in-bundle
  // crossings above each mate's occupied stretch.
  struct Member {
    int v;
    int kind;     // 0 child, 1 lone interior, 2 leading interior, 3 its partner
    int host;     // parent for children, the nearer endpoint leaf otherwise
    int aux;      // far endpoint leaf of the path, -1 for children
    int slot;     // sweep position; partners share their mate's
    int partner;  // ray whose direction is copied, -1 normally
  };
  std::vector<std::vector<Member>> bundles{{Member{t.root, 0, -1, -1, 1, -1}}};
  std::vector<int> vslot(n, 0);
  vslot[t.root] = 1;
  while (true) {
    const auto& prev = bundles.back();
    std::vector<Member> cur;
    int slot = 0;
    for (const Member& pm : prev) {
      if (pm.v >= n_tree) continue;  // interiors never host
      for (int ch : t.children[pm.v]) {
        cur.push_back({ch, 0, pm.v, -1, ++slot, -1});
        vslot[ch] = slot;
      }
      if (attach_b[pm.v][0] >= 0) {
        int b = attach_b[pm.v][0], d = attach_b[pm.v][1];
        cur.push_back({b, attach_b[pm.v][2] ? 2 : 1, pm.v, d, ++slot, -1});
        vslot[b] = slot;
      }
      if (attach_c[pm.v][0] >= 0) {
        int c = attach_c[pm.v][0], cb = attach_c[pm.v][1];
        cur.push_back({c, 3, pm.v, -1, vslot[cb], cb});
        vslot[c] = vslot[cb];
      }
    }
    if (cur.empty()) break;
    bundles.push_back(std::move(cur));
  }
  const std::size_t depth = bundles.size();
  std::vector<int> bundle_of(n, 0);
  for (std::size_t bj = 1; bj <= depth; ++bj)
    for (const Member& m : bundles[bj - 1]) bundle_of[m.v] = static_cast<int>(bj);

  // a fertile vertex still has to host rails later (children or a path
  // attachment), so crossings forced onto it must stay spread out; knots on
  // barren rays can bunch right against the previous one without cost
  std::vector<char> fertile(n, 0);
  for (int v = 0; v < n_tree; ++v)
    fertile[v] = !t.children[v].empty() || attach_b[v][0] >= 0 || attach_c[v][0] >= 0;

  int fail_a = -1, fail_b = -1;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<UpwardRay> rays(n);
    std::vector<int> placed;

    // cell bounds over ray h: above every crossing h carries from earlier
    // rays and earlier siblings, below the first crossing with a later one
    struct Window {
      Rational lo;
      std::optional<Rational> hi;
    };
    auto window = [&](int h) {
      Window w{Rational(0), std::nullopt};
      for (int e : placed) {
        if (e == h) continue;
        auto x = ray_crossing(rays[h], rays[e]);
        if (!x) continue;
        Rational tu = param_at(rays[h], *x);
        if (bundle_of[e] == bundle_of[h] && vslot[e] > vslot[h]) {
          if (!w.hi || tu < *w.hi) w.hi = tu;
        } else {
          w.lo = max(w.lo, tu);
        }
      }
      return w;
    };
    // into the open cell straight above base: most of the way to the nearest
    // supporting line overhead (that line is one we cross anyway, the mates
    // we must avoid all lie below), but never more than the bundle scale, so
    // origins stay low and the host clearance is as wide as the cell allows
    auto lifted = [&](const Point& base, const Rational& scale) {
      std::optional<Rational> gap;
      for (int e : placed) {
        Rational dy = line_y_at(rays[e], base.x) - base.y;
        if (dy.sign() > 0 && (!gap || dy < *gap)) gap = dy;
      }
      Rational z = (gap ? min(*gap * Rational(7, 8), scale * pow2(-1)) : scale * pow2(-1)) *
                   pow2(-attempt);
      return Point{base.x, base.y + z};
    };

    bool ok = true;
    for (std::size_t bj = 1; ok && bj <= depth; ++bj) {
      const auto& bundle = bundles[bj - 1];
      if (bj == 1) {
        Point o{Rational(0), Rational(0)};
        Point w{Rational(-1), Rational(2)};
        rays[t.root] = {o, o + w};
        placed.push_back(t.root);
        continue;
      }
      // scale bookkeeping is deliberately tight: the flattening ratio and the
      // reach factor both multiply into the final coordinate spread, and the
      // stabbed-unit conversion downstream needs the spread small enough that
      // its float separation margin survives
      const int lean = bj % 2 == 1 ? -1 : 1;
      Rational bx(1), by(1);
      // only same-lean predecessors force the bundle flatter: crossings with
      // the opposite lean converge on their own, and halving the decay keeps
      // the flattest rays, hence the segment extents, much shorter
      std::optional<Rational> smin;
      for (std::size_t i = 0; i < placed.size(); ++i) {
        const UpwardRay& r = rays[placed[i]];
        bx = max(bx, abs(r.origin.x));
        by = max(by, abs(r.origin.y));
        const Point rd = r.direction();
        if (rd.x.sign() == lean) {
          Rational s = rd.y / abs(rd.x);
          if (!smin || s < *smin) smin = s;
        }
        for (std::size_t k = i + 1; k < placed.size(); ++k)
          if (auto x = ray_crossing(rays[placed[i]], rays[placed[k]])) {
            bx = max(bx, abs(x->x));
            by = max(by, abs(x->y));
          }
      }
      Rational starget = (smin ? *smin : Rational(2)) * Rational(5, 8);
      Rational reach = Rational(8) * max(bx, by / starget);
      const Rational aim_y = Rational(2) * by + starget * reach;
      const Point u{Rational(-lean), Rational(0)};

      std::vector<int> mates;  // this bundle's members placed so far
      std::vector<int> kids_total(n, 0), kids_done(n, 0);
      for (const Member& m : bundle)
        if (m.kind == 0) ++kids_total[m.host];
      for (const Member& m : bundle) {
        Point base;
        if (m.kind == 1) {
          auto x = ray_crossing(rays[m.host], rays[m.aux]);
          if (!x) {
            ok = false;
            fail_a = m.v;
            fail_b = m.host;
            break;
          }
          base = *x;
        } else {
          const Window cell = window(m.host);
          // cap the rail stretch: the open cell above a host can reach the far
          // in-bundle crossings, and origins must not climb out there; a full
          // bundle scale per child rail keeps the siblings well apart, while a
          // path interior stays just over the cell floor, and retries pull the
          // rails back down when a pattern needs the origin low
          const Rational stretch =
              m.kind == 0 ? Rational(kids_total[m.host] + 1) * by : by * pow2(-2);
          const Rational tcap =
              cell.lo + stretch * pow2(-attempt) / rays[m.host].direction().y;
          const Rational hi = cell.hi ? min(*cell.hi, tcap) : tcap;
          if (!(cell.lo < hi)) {
            ok = false;
            fail_a = m.v;
            fail_b = m.host;
            break;
          }
          Rational frac = m.kind == 0
                              ? Rational(++kids_done[m.host], kids_total[m.host] + 1)
                              : Rational(1, 2);
          base = rays[m.host].origin +
                 scaled(rays[m.host].direction(), cell.lo + (hi - cell.lo) * frac);
        }
        const Point q = lifted(base, by);
        // slot-spread aims: consecutive sweep positions differ by a constant
        // slope ratio, so in-bundle crossings form fat cells, not slivers
        const Rational sig =
            Rational(1) + Rational(m.slot, static_cast<int>(bundle.size()) + 1);
        const Point aim{Rational(lean) * reach * sig, aim_y};

        // tree mates keep hosting: a new crossing on one must land above the
        // stretch its own dependants still use (interiors never host)
        std::vector<Rational> floor_of(n, Rational(0));
        for (int j : mates)
          if (j < n_tree) floor_of[j] = window(j).lo;
        // a lone interior will sit over the crossing of its endpoint pair,
        // so every line of this bundle has to pass above that corner: mates
        // swept in between are constrained when the pair completes, and the
        // corners of completed pairs constrain everyone placed after
        std::vector<std::pair<int, int>> caps;
        std::vector<Point> corners;
        for (const PathInfo& pi : paths) {
          if (pi.c >= 0 || idx.level[pi.a] != static_cast<int>(bj)) continue;
          if (pi.d == m.v) {
            for (int j : mates)
              if (vslot[pi.a] < vslot[j] && vslot[j] < vslot[m.v]) caps.emplace_back(pi.a, j);
          } else if (vslot[pi.d] < vslot[m.v]) {
            if (auto x = ray_crossing(rays[pi.a], rays[pi.d])) corners.push_back(*x);
          }
        }

        auto admissible = [&](const UpwardRay& nr) {
          if (!confirmed(m.v, nr, placed, rays, want)) return false;
          for (int j : mates) {
            if (j >= n_tree || vslot[j] > vslot[m.v] || !want.has_edge(m.v, j)) continue;
            auto x = ray_crossing(nr, rays[j]);
            if (!x || !(param_at(rays[j], *x) > floor_of[j])) return false;
          }
          for (auto [end_v, mid_v] : caps) {
            auto x = ray_crossing(nr, rays[end_v]);
            if (!x || !(x->y < line_y_at(rays[mid_v], x->x))) return false;
          }
          for (const Point& c : corners)
            if (!(c.y < line_y_at(nr, c.x))) return false;
          return true;
        };

        std::optional<UpwardRay> pick;
        if (m.partner >= 0) {
          // the copied direction cannot be tuned; the parallel mate's window
          // relations have to hold as placed
          UpwardRay nr{q, q + rays[m.partner].direction()};
          bool fits = admissible(nr);
          for (int j : mates) {
            if (!fits) break;
            if (j >= n_tree || vslot[j] <= vslot[m.v] || !want.has_edge(m.v, j)) continue;
            auto x = ray_crossing(nr, rays[j]);
            const Window wj = window(j);
            fits = x && (!wj.hi || param_at(rays[j], *x) < *wj.hi);
          }
          if (fits) pick = nr;
        } else {
          // aim point aim + delta*u: every requirement above flips sign only
          // at a root of one of these affine functions of delta, so one
          // exact sample per cell of the root partition decides feasibility
          const Point w0 = aim - q;
          // a cut is "soft" if landing right next to it is safe: floor cuts
          // order two crossings along a mate, so hugging one keeps the forced
          // crossing tight without pinching any forbidden pair. Every other
          // boundary (parallelism, origin rays, caps, corners) must be given
          // a wide berth or two disjoint segments end up a hair apart.
          std::vector<std::pair<Rational, bool>> cuts;
          auto cut_at = [&](const Rational& f0, const Rational& f1, bool soft) {
            if (f1.sign() != 0) cuts.emplace_back(-f0 / f1, soft);
          };
          for (int e : placed) {
            const Point we = rays[e].direction();
            const Point dq = q - rays[e].origin;
            const Rational c0 = cross(we, w0), cu = cross(we, u);
            const Rational a0 = cross(dq, w0), au = cross(dq, u);
            cut_at(c0, cu, false);
            cut_at(a0, au, false);
            if (bundle_of[e] == static_cast<int>(bj) && e < n_tree)
              cut_at(a0 - floor_of[e] * c0, au - floor_of[e] * cu, !fertile[e]);
          }
          for (auto [end_v, mid_v] : caps) {
            const Point we = rays[end_v].direction();
            const Point dq = q - rays[end_v].origin;
            const Rational k1 =
                cross(rays[mid_v].direction(), rays[end_v].origin - rays[mid_v].origin);
            const Rational k2 = cross(rays[mid_v].direction(), we);
            cut_at(k1 * cross(we, w0) + cross(dq, w0) * k2,
                   k1 * cross(we, u) + cross(dq, u) * k2, false);
          }
          for (const Point& c : corners)
            cut_at((q.y - c.y) * w0.x + (c.x - q.x) * w0.y, (q.y - c.y) * u.x, false);
          std::sort(cuts.begin(), cuts.end());
          for (std::size_t i = 0; i + 1 < cuts.size();) {
            if (cuts[i].first == cuts[i + 1].first) {
              cuts[i].second = cuts[i].second && cuts[i + 1].second;
              cuts.erase(cuts.begin() + static_cast<long>(i) + 1);
            } else {
              ++i;
            }
          }
          std::vector<Rational> trials{Rational(0)};
          if (!cuts.empty()) {
            const Rational lo_step = max(Rational(1), abs(cuts.front().first));
            trials.push_back(cuts.front().first - lo_step);
            if (cuts.front().second) trials.push_back(cuts.front().first - lo_step * pow2(-4));
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
              const Rational g = cuts[i + 1].first - cuts[i].first;
              if (cuts[i].second) trials.push_back(cuts[i].first + g * pow2(-4));
              trials.push_back(cuts[i].first + g * pow2(-1));
              if (cuts[i + 1].second) trials.push_back(cuts[i + 1].first - g * pow2(-4));
            }
            const Rational hi_step = max(Rational(1), abs(cuts.back().first));
            trials.push_back(cuts.back().first + hi_step);
            if (cuts.back().second) trials.push_back(cuts.back().first + hi_step * pow2(-4));
          }
          std::sort(trials.begin(), trials.end(),
                    [](const Rational& a, const Rational& b) { return abs(a) < abs(b); });
          for (const Rational& delta : trials) {
            UpwardRay nr{q, q + (w0 + scaled(u, delta))};
            if (admissible(nr)) {
              pick = nr;
              break;
            }
          }
        }
        if (!pick) {
          ok = false;
          fail_a = m.v;
          fail_b = m.host;
          break;
        }
        rays[m.v] = *pick;
        mates.push_back(m.v);
        placed.push_back(m.v);
      }
    }
    if (!ok) continue;
    Graph got = intersection_graph(rays);
    if (!(got == want)) {
      for (int x = 0; x < n && fail_a < 0; ++x)
        for (int y = x + 1; y < n; ++y)
          if (got.has_edge(x, y) != want.has_edge(x, y)) {
            fail_a = x;
            fail_b = y;
            break;
          }
      continue;
    }
    RaySystem rs;
    rs.rays = std::move(rays);
    for (int v = 0; v < n; ++v)
      rs.labels.push_back(v < n_tree ? "v" + std::to_string(v)
                                     : "w" + std::to_string(v - n_tree));
    for (std::size_t bj = 1; bj <= depth; ++bj) {
      std::vector<int> sail;
      LevelBits lb{static_cast<int>(bj), 0, 0};
      for (const Member& m : bundles[bj - 1]) {
        sail.push_back(m.v);
        absorb_bits(lb, rs.rays[m.v]);
      }
      rs.sails.push_back(std::move(sail));
      rs.level_bits.push_back(lb);
    }
    rs.graph = std::move(got);
    return rs;
  }
  throw ConstructionFailed("upward ray complement: construction failed after retries", fail_a,
                           fail_b);
}

SegmentInstance rays_to_grounded_segments(const RaySystem& r) {
  SegmentInstance out;
  if (r.rays.empty()) return out;
  for (const UpwardRay& ray : r.rays) validate(ray);
  // cut above every origin and every supporting-line crossing: the clipped
  // pieces keep all crossings and meet the cut line at distinct points
  Rational y_cut = r.rays.front().origin.y;
  for (const UpwardRay& ray : r.rays) y_cut = max(y_cut, ray.origin.y);
  for (std::size_t i = 0; i + 1 < r.rays.size(); ++i)
    for (std::size_t j = i + 1; j < r.rays.size(); ++j) {
      auto x = line_intersection(supporting_line(r.rays[i]), supporting_line(r.rays[j]));
      if (x) y_cut = max(y_cut, x->y);
    }
  y_cut = y_cut + Rational(1);
  for (const UpwardRay& ray : r.rays) {
    const Point d = ray.direction();
    const Rational t = (y_cut - ray.origin.y) / d.y;
    out.segments.push_back(
        GroundedSegment{ray.origin.x + d.x * t, Point{ray.origin.x, y_cut - ray.origin.y}});
  }
  if (!(intersection_graph(out.segments) == r.graph))
    throw std::logic_error("rays_to_grounded_segments: intersection graph not preserved");
  return out;
}

MarginTooSmall::MarginTooSmall(const std::string& what, int a, int b)
    : std::runtime_error(what), a(a), b(b) {}

StabbedUnitInstance grounded_to_stabbed_unit(const SegmentInstance& s) {
  StabbedUnitInstance out;
  const int n = static_cast<int>(s.segments.size());
  if (n == 0) return out;
  const Graph g = intersection_graph(s.segments);

  // exact power-of-two rescale: the graph and the ground line are unchanged
  // and the double conversion cannot overflow
  Rational big(0);
  for (const GroundedSegment& seg : s.segments) {
    big = max(big, abs(seg.ground_x));
    big = max(big, abs(seg.free_end.x));
    big = max(big, abs(seg.free_end.y));
  }
  long e = 0;
  if (big.sign() > 0) {
    e = static_cast<long>(bit_count(big.num())) - static_cast<long>(bit_count(big.den()));
    while (!(big * pow2(-e) < Rational(2))) ++e;
    while (big * pow2(-e) < Rational(1)) --e;
  }
  const Rational unit = pow2(-e);

  std::vector<double> fx(n), fy(n), gx(n);
  double max_len = 0;
  for (int i = 0; i < n; ++i) {
    fx[i] = (s.segments[i].free_end.x * unit).to_double();
    fy[i] = (s.segments[i].free_end.y * unit).to_double();
    gx[i] = (s.segments[i].ground_x * unit).to_double();
    max_len = std::max(max_len, std::hypot(fx[i] - gx[i], fy[i]));
  }
  const double target = 1.25 * max_len;
  out.length = target;
  out.stab_y = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = target / std::hypot(fx[i] - gx[i], fy[i]);
    out.segments.push_back({fx[i], fy[i], fx[i] + (gx[i] - fx[i]) * r, fy[i] * (1.0 - r)});
  }

  double lox = out.segments[0].ax, hix = lox, loy = out.segments[0].ay, hiy = loy;
  for (const StabbedSegment& t : out.segments) {
    lox = std::min({lox, t.ax, t.bx});
    hix = std::max({hix, t.ax, t.bx});
    loy = std::min({loy, t.ay, t.by});
    hiy = std::max({hiy, t.ay, t.by});
  }
  const double diam = std::hypot(hix - lox, hiy - loy);

  for (const StabbedSegment& t : out.segments)
    if (std::abs(std::hypot(t.bx - t.ax, t.by - t.ay) - target) > 1e-12 * target)
      throw std::logic_error("grounded_to_stabbed_unit: length drift");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const StabbedSegment &a = out.segments[i], &b = out.segments[j];
      if (g.has_edge(i, j)) {
        if (!segments_meet_d(a, b))
          throw MarginTooSmall("stabbed segments " + std::to_string(i) + " and " +
                                   std::to_string(j) + " lost their crossing",
                               i, j);
      } else if (!(pair_distance_d(a, b) > 1e-6 * diam)) {
        throw MarginTooSmall("stabbed segments " + std::to_string(i) + " and " +
                                 std::to_string(j) + " are too close",
                             i, j);
      }
    }
  return out;
}

}  // namespace geoclique
