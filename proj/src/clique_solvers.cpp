#include "geoclique/clique_solvers.hpp"

#include <algorithm>

namespace geoclique {

OracleLimitExceeded::OracleLimitExceeded(int n, int limit)
    : std::runtime_error("exact solver refused: " + std::to_string(n) + " vertices exceeds limit " +
                         std::to_string(limit)),
      graph_size(n),
      size_limit(limit) {}

NotUmbrellaFree::NotUmbrellaFree(const std::array<int, 3>& positions)
    : std::invalid_argument("order not umbrella-free at positions (" + std::to_string(positions[0]) +
                            "," + std::to_string(positions[1]) + "," + std::to_string(positions[2]) +
                            ")"),
      witness(positions) {}

SidesNotCliques::SidesNotCliques() : std::invalid_argument("a given side is not a clique") {}

namespace {

// Tomita-style branch and bound. Stops early once `best` reaches `goal`
// (goal < 0 means run to optimality).
struct MaxCliqueSearch {
  const Graph& g;
  int best = 0;
  int goal = -1;

  void expand(Bitset p, int depth) {
    if (goal >= 0 && best >= goal) return;
    int cnt = p.count();
    if (cnt == 0) {
      best = std::max(best, depth);
      return;
    }
    if (depth + cnt <= best) return;
    // Pivot on the candidate with the most candidate neighbors; only
    // non-neighbors of the pivot need branching.
    int pivot = -1, pivot_deg = -1;
    for (int v = p.first(); v >= 0; v = p.next(v)) {
      int d = (p & g.neighbors(v)).count();
      if (d > pivot_deg) {
        pivot_deg = d;
        pivot = v;
      }
    }
    Bitset branch = p - g.neighbors(pivot);
    for (int v = branch.first(); v >= 0; v = branch.next(v)) {
      if (depth + p.count() <= best) return;
      expand(p & g.neighbors(v), depth + 1);
      p.reset(v);
      if (goal >= 0 && best >= goal) return;
    }
  }
};

int bounded_max_clique_size(const Graph& g, const Bitset& candidates, int goal) {
  MaxCliqueSearch s{g, 0, goal};
  s.expand(candidates, 0);
  return s.best;
}

Bitset full_set(int n) {
  Bitset b(n);
  for (int i = 0; i < n; ++i) b.set(i);
  return b;
}

}  // namespace

int max_clique_size(const Graph& g, int limit) {
  if (g.size() > limit) throw OracleLimitExceeded(g.size(), limit);
  if (g.size() == 0) return 0;
  return bounded_max_clique_size(g, full_set(g.size()), -1);
}

std::vector<int> bron_kerbosch_max_clique(const Graph& g, int limit) {
  if (g.size() > limit) throw OracleLimitExceeded(g.size(), limit);
  int omega = g.size() == 0 ? 0 : bounded_max_clique_size(g, full_set(g.size()), -1);
  std::vector<int> clique;
  Bitset p = full_set(g.size());
  // The smallest feasible vertex is committed at each step: v extends the
  // prefix iff the candidates above v still hold a clique of the missing size.
  while (static_cast<int>(clique.size()) < omega) {
    int need = omega - static_cast<int>(clique.size()) - 1;
    bool extended = false;
    for (int v = p.first(); v >= 0; v = p.next(v)) {
      Bitset rest = p & g.neighbors(v);
      for (int u = rest.first(); u >= 0 && u <= v; u = rest.next(u)) rest.reset(u);
      if (bounded_max_clique_size(g, rest, need) >= need) {
        clique.push_back(v);
        p = rest;
        extended = true;
        break;
      }
    }
    if (!extended) throw std::logic_error("bron_kerbosch_max_clique: no feasible extension");
  }
  return clique;
}

std::optional<std::array<int, 3>> umbrella_violation(const Graph& g, const std::vector<int>& order) {
  int n = g.size();
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("umbrella_violation: order size mismatch");
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("umbrella_violation: not a permutation");
    seen[v] = 1;
  }
  // Adjacency rows permuted into position space, so triples scan with bitsets.
  std::vector<Bitset> padj(n, Bitset(n));
  for (int i = 0; i < n; ++i) {
    const Bitset& row = g.neighbors(order[i]);
    for (int j = 0; j < n; ++j)
      if (row.test(order[j])) padj[i].set(j);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (padj[i].test(j)) continue;
      // Violating k: past j, adjacent to position i, not adjacent to j.
      Bitset w = padj[i] - padj[j];
      int k = w.next(j);
      if (k >= 0) return std::array<int, 3>{i, j, k};
    }
  }
  return std::nullopt;
}

BipartiteMatching bipartite_max_matching(int n_left, int n_right,
                                         const std::vector<std::vector<int>>& adj) {
  BipartiteMatching m;
  m.match_left.assign(n_left, -1);
  m.match_right.assign(n_right, -1);

  std::vector<char> visited(n_right, 0);
  auto augment = [&](auto&& self, int u) -> bool {
    for (int v : adj[u]) {
      if (visited[v]) continue;
      visited[v] = 1;
      if (m.match_right[v] < 0 || self(self, m.match_right[v])) {
        m.match_left[u] = v;
        m.match_right[v] = u;
        return true;
      }
    }
    return false;
  };
  for (int u = 0; u < n_left; ++u) {
    std::fill(visited.begin(), visited.end(), 0);
    if (augment(augment, u)) ++m.size;
  }

  // Koenig: alternate from unmatched left vertices; the cover is the
  // unreached left side plus the reached right side.
  std::vector<char> reach_l(n_left, 0), reach_r(n_right, 0);
  std::vector<int> stack;
  for (int u = 0; u < n_left; ++u)
    if (m.match_left[u] < 0) {
      reach_l[u] = 1;
      stack.push_back(u);
    }
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (reach_r[v]) continue;
      reach_r[v] = 1;
      int w = m.match_right[v];
      if (w >= 0 && !reach_l[w]) {
        reach_l[w] = 1;
        stack.push_back(w);
      }
    }
  }
  m.cover_left.assign(n_left, 0);
  m.cover_right.assign(n_right, 0);
  for (int u = 0; u < n_left; ++u) m.cover_left[u] = !reach_l[u];
  for (int v = 0; v < n_right; ++v) m.cover_right[v] = reach_r[v];
  return m;
}

std::vector<int> cocomparability_max_clique(const Graph& g, const std::vector<int>& order) {
  if (auto viol = umbrella_violation(g, order)) throw NotUmbrellaFree(*viol);
  int n = g.size();
  if (n == 0) return {};
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  // Complement edges oriented earlier -> later form a transitive relation;
  // chains of it are covered via matching left copies to right copies.
  std::vector<std::vector<int>> adj(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && !g.has_edge(u, v) && pos[u] < pos[v]) adj[u].push_back(v);

  BipartiteMatching m = bipartite_max_matching(n, n, adj);

  std::vector<int> antichain;
  for (int v = 0; v < n; ++v)
    if (!m.cover_left[v] && !m.cover_right[v]) antichain.push_back(v);

  // Dilworth: uncovered copies must number exactly n minus the matching.
  if (static_cast<int>(antichain.size()) != n - m.size)
    throw std::logic_error("cocomparability_max_clique: antichain size mismatch");
  if (!g.is_clique(antichain))
    throw std::logic_error("cocomparability_max_clique: recovered set is not a clique");
  return antichain;
}

std::vector<int> cobipartite_max_clique(const Graph& g, const std::vector<int>& side_a,
                                        const std::vector<int>& side_b) {
  int n = g.size();
  std::vector<int> side(n, -1);
  for (int v : side_a) {
    if (v < 0 || v >= n || side[v] != -1) throw std::invalid_argument("cobipartite_max_clique: bad side");
    side[v] = 0;
  }
  for (int v : side_b) {
    if (v < 0 || v >= n || side[v] != -1) throw std::invalid_argument("cobipartite_max_clique: bad side");
    side[v] = 1;
  }
  for (int v = 0; v < n; ++v)
    if (side[v] == -1)
      throw std::invalid_argument("cobipartite_max_clique: sides do not cover the graph");
  if (!g.is_clique(side_a) || !g.is_clique(side_b)) throw SidesNotCliques();

  // Cross non-edges form a bipartite graph; a Koenig cover of them is the
  // minimum set to delete, everything else is one clique.
  std::vector<std::vector<int>> adj(side_a.size());
  for (std::size_t i = 0; i < side_a.size(); ++i)
    for (std::size_t j = 0; j < side_b.size(); ++j)
      if (!g.has_edge(side_a[i], side_b[j])) adj[i].push_back(static_cast<int>(j));

  BipartiteMatching m =
      bipartite_max_matching(static_cast<int>(side_a.size()), static_cast<int>(side_b.size()), adj);

  std::vector<int> clique;
  for (std::size_t i = 0; i < side_a.size(); ++i)
    if (!m.cover_left[i]) clique.push_back(side_a[i]);
  for (std::size_t j = 0; j < side_b.size(); ++j)
    if (!m.cover_right[j]) clique.push_back(side_b[j]);
  std::sort(clique.begin(), clique.end());

  if (static_cast<int>(clique.size()) != n - m.size)
    throw std::logic_error("cobipartite_max_clique: clique size mismatch");
  if (!g.is_clique(clique)) throw std::logic_error("cobipartite_max_clique: recovered set is not a clique");
  return clique;
}

}  // namespace geoclique
