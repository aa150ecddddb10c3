#include "geoclique/segment_cliques.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>

namespace geoclique {

NotIntersecting::NotIntersecting(int a, int b)
    : std::invalid_argument("segments " + std::to_string(a) + " and " + std::to_string(b) +
                            " do not intersect") {}

NotUnitLength::NotUnitLength() : std::invalid_argument("segments do not share one exact length") {}

DegenerateLines::DegenerateLines(int a, int b)
    : std::runtime_error("items " + std::to_string(a) + " and " + std::to_string(b) +
                         " share a supporting line") {}

TooManyLines::TooManyLines(int k, int limit)
    : std::invalid_argument("instance uses " + std::to_string(k) + " lines, cap is " +
                            std::to_string(limit)) {}

DuplicateCoordinates::DuplicateCoordinates(const std::string& what) : std::invalid_argument(what) {}

namespace {

bool point_on_closed_segment(const Segment& s, const Point& p) {
  if (orient(s.a, s.b, p) != 0) return false;
  return min(s.a.x, s.b.x) <= p.x && p.x <= max(s.a.x, s.b.x) && min(s.a.y, s.b.y) <= p.y &&
         p.y <= max(s.a.y, s.b.y);
}

}  // namespace

void validate(const SegmentInstance& inst) {
  const auto& segs = inst.segments;
  for (const auto& s : segs) validate(s);
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (segs[i].ground_x == segs[j].ground_x)
        throw std::invalid_argument("duplicate ground point at segments " + std::to_string(i) +
                                    "," + std::to_string(j));
      if (segs[i].free_end == segs[j].free_end)
        throw std::invalid_argument("duplicate free endpoint at segments " + std::to_string(i) +
                                    "," + std::to_string(j));
      if (point_on_closed_segment(segs[i].as_segment(), segs[j].free_end) ||
          point_on_closed_segment(segs[j].as_segment(), segs[i].free_end))
        throw std::invalid_argument("free endpoint of one segment lies on another (segments " +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
    }
  if (inst.endpoint_lines) {
    for (std::size_t i = 0; i < segs.size(); ++i) {
      bool covered = false;
      for (const auto& l : *inst.endpoint_lines)
        if (on_line(l, segs[i].free_end)) {
          covered = true;
          break;
        }
      if (!covered)
        throw std::invalid_argument("free endpoint of segment " + std::to_string(i) +
                                    " lies on none of the endpoint lines");
    }
  }
}

Graph intersection_graph(const std::vector<GroundedSegment>& segments) {
  Graph g(static_cast<int>(segments.size()));
  for (std::size_t i = 0; i < segments.size(); ++i)
    for (std::size_t j = i + 1; j < segments.size(); ++j)
      if (segments_intersect(segments[i], segments[j]))
        g.add_edge(static_cast<int>(i), static_cast<int>(j));
  return g;
}

Graph intersection_graph(const std::vector<UpwardRay>& rays) {
  Graph g(static_cast<int>(rays.size()));
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (rays_intersect(rays[i], rays[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
  return g;
}

CandidateSubgraph candidate_subgraph(const SegmentInstance& inst, int a, int b) {
  const auto& segs = inst.segments;
  if (!(segs[a].ground_x < segs[b].ground_x))
    throw std::invalid_argument("candidate_subgraph: a must ground left of b");
  if (!segments_intersect(segs[a], segs[b])) throw NotIntersecting(a, b);

  CandidateSubgraph out;
  out.vertices.push_back(a);
  for (int m = 0; m < static_cast<int>(segs.size()); ++m) {
    if (m == a || m == b) continue;
    if (segs[a].ground_x < segs[m].ground_x && segs[m].ground_x < segs[b].ground_x &&
        segments_intersect(segs[m], segs[a]) && segments_intersect(segs[m], segs[b]))
      out.vertices.push_back(m);
  }
  out.vertices.push_back(b);
  std::sort(out.vertices.begin(), out.vertices.end(),
            [&](int u, int v) { return segs[u].ground_x < segs[v].ground_x; });

  std::vector<GroundedSegment> sub;
  sub.reserve(out.vertices.size());
  for (int v : out.vertices) sub.push_back(segs[v]);
  out.graph = intersection_graph(sub);
  return out;
}

namespace {

// Deterministic reduction used by every solver that scans many subproblems.
void keep_better(std::vector<int>& best, std::vector<int> cand) {
  std::sort(cand.begin(), cand.end());
  if (cand.size() > best.size() || (cand.size() == best.size() && cand < best)) best = std::move(cand);
}

}  // namespace

std::vector<int> unit_grounded_max_clique(const SegmentInstance& inst) {
  validate(inst);
  const auto& segs = inst.segments;
  int n = static_cast<int>(segs.size());
  if (n == 0) return {};

  auto sq_len = [&](const GroundedSegment& s) {
    Point d = s.free_end - s.ground_point();
    return dot(d, d);
  };
  Rational common = sq_len(segs[0]);
  for (int i = 1; i < n; ++i)
    if (sq_len(segs[i]) != common) throw NotUnitLength();

  std::vector<int> best{0};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || !(segs[a].ground_x < segs[b].ground_x)) continue;
      if (!segments_intersect(segs[a], segs[b])) continue;
      CandidateSubgraph cs = candidate_subgraph(inst, a, b);
      if (cs.vertices.size() <= best.size()) continue;
      std::vector<int> order(cs.vertices.size());
      std::iota(order.begin(), order.end(), 0);
      std::vector<int> local = cocomparability_max_clique(cs.graph, order);
      std::vector<int> clique;
      clique.reserve(local.size());
      for (int v : local) clique.push_back(cs.vertices[v]);
      keep_better(best, std::move(clique));
    }
  }
  return best;
}

SPrimeInstance build_s_prime(const SegmentInstance& inst) {
  validate(inst);
  if (!inst.endpoint_lines) throw std::invalid_argument("build_s_prime: endpoint lines required");
  const auto& segs = inst.segments;
  int n = static_cast<int>(segs.size());
  if (n == 0) throw std::invalid_argument("build_s_prime: empty instance");

  std::vector<UpwardRay> rays;
  std::vector<LineEq> ray_lines;
  rays.reserve(n);
  for (const auto& s : segs) {
    rays.push_back(to_upward_ray(s));
    ray_lines.push_back(supporting_line(rays.back()));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (ray_lines[i] == ray_lines[j]) throw DegenerateLines(i, j);

  // L sits strictly below every origin and every pairwise crossing of the
  // supporting lines, so each item is a proper segment and the whole line
  // arrangement stays above the new ground.
  Rational low = rays[0].origin.y;
  for (const auto& r : rays) low = min(low, r.origin.y);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto x = line_intersection(ray_lines[i], ray_lines[j]);
      if (x) low = min(low, x->y);
    }
  Rational level = low - Rational(1);

  SPrimeInstance out;
  out.ground_level = level;
  out.items.reserve(n);
  for (int i = 0; i < n; ++i) {
    const LineEq& l = ray_lines[i];
    // Upward rays are never horizontal, so l.a != 0.
    Rational hit_x = (l.c - l.b * level) / l.a;
    out.items.push_back(
        GroundedSegment{hit_x, Point{rays[i].origin.x, rays[i].origin.y - level}});
    validate(out.items.back());
  }
  for (const auto& l : *inst.endpoint_lines) {
    LineEq img = involute(l);
    // Shift down by `level`: substitute y + level for y.
    out.lines.push_back(make_line(img.a, img.b, img.c - img.b * level));
  }

  out.sigma.resize(n);
  std::iota(out.sigma.begin(), out.sigma.end(), 0);
  std::sort(out.sigma.begin(), out.sigma.end(),
            [&](int i, int j) { return out.items[i].ground_x < out.items[j].ground_x; });
  for (int p = 0; p + 1 < n; ++p)
    if (out.items[out.sigma[p]].ground_x == out.items[out.sigma[p + 1]].ground_x)
      throw std::logic_error("build_s_prime: items share a ground point");

  // Every free endpoint still rides one of the translated lines, and all
  // pairwise crossings stayed strictly above the ground.
  for (int i = 0; i < n; ++i) {
    bool covered = false;
    for (const auto& l : out.lines) covered = covered || on_line(l, out.items[i].free_end);
    if (!covered) throw std::logic_error("build_s_prime: item endpoint off every image line");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto x = line_intersection(supporting_line(out.items[i]), supporting_line(out.items[j]));
      if (!x || x->y.sign() <= 0) throw std::logic_error("build_s_prime: crossing not above ground");
    }
  return out;
}

namespace {

constexpr int16_t kNoItem = -1;

// Chosen items remembered per endpoint line: at most the two ground-outermost
// per side of the active window. Entries ascend by item index so equal
// ledgers collide in the memo.
struct Ledger {
  // [line][side 0=left,1=right][slot]
  std::vector<std::array<std::array<int16_t, 2>, 2>> slot;

  explicit Ledger(int k) : slot(k, {{{kNoItem, kNoItem}, {kNoItem, kNoItem}}}) {}

  void encode(std::vector<int16_t>& key) const {
    for (const auto& per_line : slot)
      for (const auto& per_side : per_line) {
        key.push_back(per_side[0]);
        key.push_back(per_side[1]);
      }
  }
};

struct DpContext {
  const SPrimeInstance& sp;
  std::vector<int> pos;                 // item -> position in sigma
  std::vector<int> line_of;             // item -> endpoint line index
  std::vector<std::vector<char>> indep; // pairwise strict independence
  int n;
  int left_sentinel;   // n
  int right_sentinel;  // n + 1

  struct Memo {
    int value;
    int16_t best;  // chosen item, or kNoItem
  };
  std::map<std::vector<int16_t>, Memo> memo;

  int position(int v) const {
    if (v == left_sentinel) return -1;
    if (v == right_sentinel) return n;
    return pos[v];
  }

  // Strict (height, index) order; sentinels outrank every item.
  bool lower(int x, int boundary) const {
    if (boundary >= n) return true;
    if (x >= n) return false;
    const Rational& hx = sp.items[x].free_end.y;
    const Rational& hb = sp.items[boundary].free_end.y;
    if (hx != hb) return hx < hb;
    return x < boundary;
  }

  Ledger child_ledger(const Ledger& t, int c, int side) const {
    Ledger out = t;
    auto& s = out.slot[line_of[c]][side];
    if (s[0] == kNoItem) {
      s[0] = static_cast<int16_t>(c);
    } else if (s[1] == kNoItem) {
      s[1] = static_cast<int16_t>(c);
      if (s[0] > s[1]) std::swap(s[0], s[1]);
    } else {
      // Three same-line entries on one side: keep the two ground-outermost.
      std::array<int, 3> three{s[0], s[1], c};
      auto gx = [&](int v) { return sp.items[v].ground_x; };
      std::sort(three.begin(), three.end(), [&](int u, int v) { return gx(u) < gx(v); });
      int keep0 = three[0], keep1 = three[2];
      if (keep0 > keep1) std::swap(keep0, keep1);
      s[0] = static_cast<int16_t>(keep0);
      s[1] = static_cast<int16_t>(keep1);
    }
    return out;
  }

  std::vector<int16_t> key(int i, int j, const Ledger& t) const {
    std::vector<int16_t> k;
    k.reserve(2 + t.slot.size() * 4);
    k.push_back(static_cast<int16_t>(i));
    k.push_back(static_cast<int16_t>(j));
    t.encode(k);
    return k;
  }

  bool compatible(int c, const Ledger& t) const {
    for (const auto& per_line : t.slot)
      for (const auto& per_side : per_line)
        for (int16_t e : per_side)
          if (e != kNoItem && !indep[c][e]) return false;
    return true;
  }

  int solve(int i, int j, const Ledger& t) {
    auto k = key(i, j, t);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second.value;

    int lo = position(i), hi = position(j);
    int best_value = 0;
    int16_t best_c = kNoItem;
    for (int p = lo + 1; p < hi; ++p) {
      int c = sp.sigma[p];
      if (!lower(c, i) || !lower(c, j)) continue;
      if (!compatible(c, t)) continue;
      int v = solve(i, c, child_ledger(t, c, 1)) + solve(c, j, child_ledger(t, c, 0)) + 1;
      if (v > best_value || (v == best_value && best_c != kNoItem && c < best_c)) {
        best_value = v;
        best_c = static_cast<int16_t>(c);
      }
    }
    memo.emplace(std::move(k), Memo{best_value, best_c});
    return best_value;
  }

  void collect(int i, int j, const Ledger& t, std::vector<int>& out) {
    auto it = memo.find(key(i, j, t));
    if (it == memo.end() || it->second.best == kNoItem) return;
    int c = it->second.best;
    out.push_back(c);
    collect(i, c, child_ledger(t, c, 1), out);
    collect(c, j, child_ledger(t, c, 0), out);
  }
};

}  // namespace

std::vector<int> dp_fixed_lines(const SegmentInstance& inst, int max_lines) {
  validate(inst);
  if (!inst.endpoint_lines) throw std::invalid_argument("dp_fixed_lines: endpoint lines required");
  int k = static_cast<int>(inst.endpoint_lines->size());
  if (k > max_lines) throw TooManyLines(k, max_lines);
  if (inst.segments.empty()) return {};

  SPrimeInstance sp = build_s_prime(inst);
  int n = static_cast<int>(sp.items.size());

  DpContext ctx{sp, {}, {}, {}, n, n, n + 1, {}};
  ctx.pos.resize(n);
  for (int p = 0; p < n; ++p) ctx.pos[sp.sigma[p]] = p;
  ctx.line_of.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int w = 0; w < k; ++w)
      if (on_line(sp.lines[w], sp.items[i].free_end)) {
        ctx.line_of[i] = w;
        break;
      }
  for (int i = 0; i < n; ++i)
    if (ctx.line_of[i] < 0) throw std::logic_error("dp_fixed_lines: item without a line");
  ctx.indep.assign(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      ctx.indep[i][j] = ctx.indep[j][i] = strictly_independent(sp.items[i], sp.items[j]);

  Ledger top(k);
  ctx.solve(ctx.left_sentinel, ctx.right_sentinel, top);
  std::vector<int> chosen;
  ctx.collect(ctx.left_sentinel, ctx.right_sentinel, top, chosen);
  std::sort(chosen.begin(), chosen.end());

  // The chosen items must be pairwise strictly independent, and exactly those
  // original segments must pairwise intersect.
  for (std::size_t a = 0; a < chosen.size(); ++a)
    for (std::size_t b = a + 1; b < chosen.size(); ++b) {
      if (!ctx.indep[chosen[a]][chosen[b]])
        throw std::logic_error("dp_fixed_lines: dependent pair selected");
      if (!segments_intersect(inst.segments[chosen[a]], inst.segments[chosen[b]]))
        throw std::logic_error("dp_fixed_lines: selected pair does not intersect");
    }
  return chosen;
}

namespace {

struct MonotoneDecomposition {
  std::vector<std::vector<int>> extractions;  // full monotone runs, in strip order
  std::vector<std::vector<int>> blocks;       // runs chopped to the size cap
};

// Longest y-monotone subsequence of `alive` (which is in ascending-x order),
// smallest index sequence among winners. `increasing` picks the direction.
std::vector<int> longest_monotone(const std::vector<int>& alive, const std::vector<Point>& pts,
                                  bool increasing) {
  int m = static_cast<int>(alive.size());
  std::vector<int> len(m, 1);
  auto before = [&](int u, int v) {
    return increasing ? pts[u].y < pts[v].y : pts[u].y > pts[v].y;
  };
  int best = 0;
  for (int i = m - 1; i >= 0; --i) {
    for (int j = i + 1; j < m; ++j)
      if (before(alive[i], alive[j])) len[i] = std::max(len[i], len[j] + 1);
    best = std::max(best, len[i]);
  }
  std::vector<int> out;
  int need = best, prev = -1;
  for (int i = 0; i < m && need > 0; ++i) {
    if (len[i] != need) continue;
    if (prev >= 0 && !before(prev, alive[i])) continue;
    out.push_back(alive[i]);
    prev = alive[i];
    --need;
  }
  return out;
}

MonotoneDecomposition decompose_monotone(const std::vector<Point>& points) {
  int n = static_cast<int>(points.size());
  for (int i = 0; i + 1 < n; ++i)
    if (!(points[i].x < points[i + 1].x))
      throw DuplicateCoordinates("points must have strictly increasing x");
  {
    std::vector<Rational> ys;
    ys.reserve(n);
    for (const auto& p : points) ys.push_back(p.y);
    std::sort(ys.begin(), ys.end());
    for (int i = 0; i + 1 < n; ++i)
      if (ys[i] == ys[i + 1]) throw DuplicateCoordinates("points must have distinct y");
  }

  MonotoneDecomposition out;
  if (n == 0) return out;
  int cap = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));

  std::vector<int> alive(n);
  std::iota(alive.begin(), alive.end(), 0);
  while (!alive.empty()) {
    std::vector<int> inc = longest_monotone(alive, points, true);
    std::vector<int> dec = longest_monotone(alive, points, false);
    std::vector<int>& run = inc.size() >= dec.size() ? inc : dec;

    for (std::size_t at = 0; at < run.size(); at += cap) {
      std::size_t end = std::min(run.size(), at + cap);
      out.blocks.emplace_back(run.begin() + at, run.begin() + end);
    }
    std::vector<int> rest;
    rest.reserve(alive.size() - run.size());
    std::size_t r = 0;
    for (int v : alive) {
      if (r < run.size() && run[r] == v) {
        ++r;
        continue;
      }
      rest.push_back(v);
    }
    alive.swap(rest);
    out.extractions.push_back(std::move(run));
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> monotone_partition(const std::vector<Point>& points) {
  return decompose_monotone(points).blocks;
}

ApproxSegmentsResult approx_clique_n34(const SegmentInstance& inst) {
  validate(inst);
  const auto& segs = inst.segments;
  int n = static_cast<int>(segs.size());
  ApproxSegmentsResult res;
  if (n == 0) return res;

  // Free endpoints in ascending-x order; rank r corresponds to segment
  // by_free_x[r].
  std::vector<int> by_free_x(n);
  std::iota(by_free_x.begin(), by_free_x.end(), 0);
  std::sort(by_free_x.begin(), by_free_x.end(), [&](int a, int b) {
    if (segs[a].free_end.x != segs[b].free_end.x) return segs[a].free_end.x < segs[b].free_end.x;
    return segs[a].free_end.y < segs[b].free_end.y;
  });
  std::vector<Point> free_pts(n);
  for (int r = 0; r < n; ++r) free_pts[r] = segs[by_free_x[r]].free_end;

  MonotoneDecomposition level1 = decompose_monotone(free_pts);
  res.pieces_level1 = static_cast<int>(level1.blocks.size());

  // A candidate is any run that is monotone in free-endpoint y AND in ground
  // x; ground order is then umbrella-free, so the exact solver applies.
  auto solve_run = [&](const std::vector<int>& seg_ids) {
    std::vector<int> order_ids = seg_ids;
    std::sort(order_ids.begin(), order_ids.end(),
              [&](int a, int b) { return segs[a].ground_x < segs[b].ground_x; });
    std::vector<GroundedSegment> sub;
    sub.reserve(order_ids.size());
    for (int v : order_ids) sub.push_back(segs[v]);
    Graph g = intersection_graph(sub);
    std::vector<int> identity(order_ids.size());
    std::iota(identity.begin(), identity.end(), 0);
    std::vector<int> local = cocomparability_max_clique(g, identity);
    std::vector<int> clique;
    clique.reserve(local.size());
    for (int v : local) clique.push_back(order_ids[v]);
    keep_better(res.clique, std::move(clique));
  };

  // Ranks (free-x order) -> segment ids, then split by ground-x monotonicity.
  auto ground_split = [&](const std::vector<int>& ranks) {
    std::vector<Point> gp(ranks.size());
    for (std::size_t t = 0; t < ranks.size(); ++t)
      gp[t] = Point{Rational(static_cast<long>(t)), segs[by_free_x[ranks[t]]].ground_x};
    return decompose_monotone(gp);
  };
  auto to_ids = [&](const std::vector<int>& ranks, const std::vector<int>& local) {
    std::vector<int> ids;
    ids.reserve(local.size());
    for (int t : local) ids.push_back(by_free_x[ranks[t]]);
    return ids;
  };

  res.max_pieces_level2 = 0;
  for (const auto& piece : level1.blocks) {
    MonotoneDecomposition level2 = ground_split(piece);
    res.max_pieces_level2 =
        std::max(res.max_pieces_level2, static_cast<int>(level2.blocks.size()));
    for (const auto& blk : level2.blocks) {
      std::vector<int> ids = to_ids(piece, blk);
      res.blocks.push_back(ids);
      solve_run(ids);
    }
  }

  // Unsplit monotone runs are valid candidates too and keep fully monotone
  // instances in one piece; the (k, z) guarantee above never depends on them.
  for (const auto& run : level1.extractions) {
    MonotoneDecomposition level2 = ground_split(run);
    for (const auto& ex : level2.extractions) solve_run(to_ids(run, ex));
  }

  return res;
}

}  // namespace geoclique
