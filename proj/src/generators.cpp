#include "geoclique/generators.hpp"

#include <algorithm>
#include <cmath>

namespace geoclique {

GeneratorTimeout::GeneratorTimeout(const std::string& what) : std::runtime_error(what) {}

std::uint64_t rnd_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Modulo bias is irrelevant for instance generation.
  return bound == 0 ? 0 : rng() % bound;
}

long rnd_range(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rnd_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

double rnd_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

// Distinct integers, shuffled, from [0, span).
std::vector<long> distinct_ints(std::mt19937_64& rng, int n, long span) {
  std::vector<long> all(span);
  for (long i = 0; i < span; ++i) all[i] = i;
  for (long i = span - 1; i > 0; --i)
    std::swap(all[i], all[rnd_below(rng, static_cast<std::uint64_t>(i + 1))]);
  all.resize(n);
  return all;
}

Rational rnd_rational(std::mt19937_64& rng, long num_lo, long num_hi, long den_hi) {
  return Rational(rnd_range(rng, num_lo, num_hi), rnd_range(rng, 1, den_hi));
}

}  // namespace

std::vector<GroundedSegment> gen_unit_segments(int n, std::uint64_t seed) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * attempt);
    // Common length comparable to the ground span, so crossings are common.
    Rational len(std::max<long>(4, (3L * n) / 2), 2);
    std::vector<long> grounds = distinct_ints(rng, n, std::max<long>(2L * n, 8));
    std::vector<GroundedSegment> segs;
    segs.reserve(n);
    for (int i = 0; i < n; ++i) {
      long q = rnd_range(rng, 2, 20);
      long p = rnd_range(rng, 1, q - 1);
      Rational t(p, q);
      Rational one(1);
      Rational denom = one + t * t;
      Rational ux = (one - t * t) / denom;
      Rational uy = (t + t) / denom;  // (1-t^2, 2t)/(1+t^2) has unit norm
      if (rnd_below(rng, 2)) ux = -ux;
      Rational gx(grounds[i]);
      segs.push_back(GroundedSegment{gx, Point{gx + len * ux, len * uy}});
    }
    try {
      validate(SegmentInstance{segs, std::nullopt});
      return segs;
    } catch (const std::invalid_argument&) {
      // Degenerate draw (shared endpoint or endpoint on a segment): redraw.
    }
  }
  throw GeneratorTimeout("gen_unit_segments: no valid instance after 100 attempts");
}

SegmentInstance gen_klines_instance(int n, int k, std::uint64_t seed) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * attempt);
    // Lines y = a x + b, none horizontal-at-zero and none the ground line.
    std::vector<LineEq> lines;
    for (int w = 0; w < k; ++w) {
      Rational a = rnd_rational(rng, -3, 3, 4);
      Rational b = rnd_rational(rng, 2, 12, 3);
      lines.push_back(make_line(-a, Rational(1), b));  // y - a x = b
    }
    std::vector<long> grounds = distinct_ints(rng, n, std::max<long>(3L * n, 8));
    std::vector<GroundedSegment> segs;
    for (int i = 0; i < n; ++i) {
      int w = i % k;
      const LineEq& l = lines[w];  // l.b != 0: the construction fixes the y-coefficient
      for (int tries = 0; tries < 200; ++tries) {
        Rational fx = rnd_rational(rng, -6 - n, 6 + static_cast<long>(n) * 2, 4);
        Rational fy = (l.c - l.a * fx) / l.b;
        if (fy.sign() > 0) {
          segs.push_back(GroundedSegment{Rational(grounds[i]), Point{fx, fy}});
          break;
        }
      }
    }
    if (static_cast<int>(segs.size()) != n) continue;
    SegmentInstance inst{segs, lines};
    try {
      validate(inst);
      return inst;
    } catch (const std::invalid_argument&) {
    }
  }
  throw GeneratorTimeout("gen_klines_instance: no valid instance after 100 attempts");
}

std::vector<GroundedDisk> gen_grounded_disks(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  long spread = std::max<long>(4, rnd_range(rng, 2, 5) * n);
  std::vector<GroundedDisk> disks;
  disks.reserve(n);
  for (int i = 0; i < n; ++i) {
    Rational x = rnd_rational(rng, -spread, spread, 6);
    Rational r = rnd_rational(rng, 1, 8, 2);
    disks.push_back(GroundedDisk{x, r});
  }
  return disks;
}

std::vector<Disk> gen_intersecting_disks(int n, double r_min, double r_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int restart = 0; restart < 200; ++restart) {
    std::vector<Disk> disks;
    // All centers within a box of half-width ~r_min keeps pairwise
    // intersection likely while still producing non-Helly triples.
    double spread = 1.1 * r_min + 0.35 * (r_max - r_min);
    int stuck = 0;
    while (static_cast<int>(disks.size()) < n && stuck < 2000) {
      Disk d{(2 * rnd_unit(rng) - 1) * spread, (2 * rnd_unit(rng) - 1) * spread,
             r_min + rnd_unit(rng) * (r_max - r_min)};
      bool fits = true;
      for (const Disk& e : disks)
        if (!disks_intersect(d, e, -1e-7)) {  // strict margin, no borderline pairs
          fits = false;
          break;
        }
      if (fits) {
        disks.push_back(d);
        stuck = 0;
      } else {
        ++stuck;
      }
    }
    if (static_cast<int>(disks.size()) == n) return disks;
  }
  throw GeneratorTimeout("gen_intersecting_disks: could not place " + std::to_string(n) + " disks");
}

std::vector<Disk> gen_helly_disks(int n, double r_min, double r_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double px = (2 * rnd_unit(rng) - 1) * 2.0;
  double py = (2 * rnd_unit(rng) - 1) * 2.0;
  std::vector<Disk> disks;
  disks.reserve(n);
  for (int i = 0; i < n; ++i) {
    double r = r_min + rnd_unit(rng) * (r_max - r_min);
    double rho = rnd_unit(rng) * (r - 1e-3);
    double ang = rnd_unit(rng) * 6.283185307179586;
    disks.push_back(Disk{px + rho * std::cos(ang), py + rho * std::sin(ang), r});
  }
  return disks;
}

std::pair<TreeSpec, ExtensionSpec> gen_tree_extension(int max_vertices, std::uint64_t seed) {
  if (max_vertices < 1) throw std::invalid_argument("gen_tree_extension: need max_vertices >= 1");
  std::mt19937_64 rng(seed);
  TreeSpec t;
  t.node_count = 1 + static_cast<int>(rnd_below(rng, static_cast<std::uint64_t>(max_vertices)));
  t.root = 0;
  t.children.assign(t.node_count, {});
  std::vector<int> depth(t.node_count, 1);
  for (int v = 1; v < t.node_count; ++v) {
    std::vector<int> hosts;
    for (int u = 0; u < v; ++u)
      if (depth[u] < 4) hosts.push_back(u);
    int u = hosts[rnd_below(rng, hosts.size())];
    t.children[u].push_back(v);
    depth[v] = depth[u] + 1;
  }

  ExtensionSpec p;
  int next_id = t.node_count;
  int budget = max_vertices - t.node_count;
  std::vector<char> taken(t.node_count, 0);
  const auto levels = tree_levels(t);
  for (int round = 0; round < 2 && budget >= 1; ++round) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& level : levels)
      for (std::size_t i = 0; i + 1 < level.size(); ++i) {
        int a = level[i], d = level[i + 1];
        if (t.children[a].empty() && t.children[d].empty() && !taken[a] && !taken[d])
          pairs.push_back({a, d});
      }
    if (pairs.empty()) break;
    auto [a, d] = pairs[rnd_below(rng, pairs.size())];
    int inner = budget >= 2 ? 1 + static_cast<int>(rnd_below(rng, 2)) : 1;
    std::vector<int> path{a};
    for (int i = 0; i < inner; ++i) path.push_back(next_id++);
    path.push_back(d);
    p.paths.push_back(std::move(path));
    taken[a] = taken[d] = 1;
    budget -= inner;
  }
  return {t, p};
}

}  // namespace geoclique
