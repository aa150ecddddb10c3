#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoclique/graph.hpp"

namespace geoclique {

// Hard cap for the exponential reference solver. Everything above it must go
// through one of the structured solvers.
inline constexpr int kOracleSizeLimit = 40;

class OracleLimitExceeded : public std::runtime_error {
 public:
  OracleLimitExceeded(int n, int limit);
  int graph_size;
  int size_limit;
};

class NotUmbrellaFree : public std::invalid_argument {
 public:
  explicit NotUmbrellaFree(const std::array<int, 3>& positions);
  std::array<int, 3> witness;  // violating positions i < j < k in the order
};

class SidesNotCliques : public std::invalid_argument {
 public:
  SidesNotCliques();
};

// Size of a maximum clique, by branch and bound with pivoting.
// Throws OracleLimitExceeded when g.size() > limit.
int max_clique_size(const Graph& g, int limit = kOracleSizeLimit);

// The lexicographically smallest maximum clique (vertices ascending). A
// pivoted branch-and-bound search finds the size, then one vertex at a time
// is committed with size-cutoff queries. This is the reference answer every
// structured solver is measured against.
// Throws OracleLimitExceeded when g.size() > limit.
std::vector<int> bron_kerbosch_max_clique(const Graph& g, int limit = kOracleSizeLimit);

// First triple of positions (i, j, k), i < j < k in lexicographic scan order,
// such that order[i]order[k] is an edge but neither order[i]order[j] nor
// order[j]order[k] is. nullopt means `order` is an umbrella-free order of g,
// i.e. orienting every complement edge from earlier to later is transitive.
// pre: order is a permutation of 0..g.size()-1.
std::optional<std::array<int, 3>> umbrella_violation(const Graph& g, const std::vector<int>& order);

// Augmenting-path bipartite matching plus a Koenig minimum vertex cover.
// Deterministic: left vertices are processed in index order and neighbor
// lists in the order given.
struct BipartiteMatching {
  int size = 0;
  std::vector<int> match_left;    // matched right index, or -1
  std::vector<int> match_right;   // matched left index, or -1
  std::vector<char> cover_left;   // 1 if in the minimum vertex cover
  std::vector<char> cover_right;
};

BipartiteMatching bipartite_max_matching(int n_left, int n_right,
                                         const std::vector<std::vector<int>>& adj);

// Maximum clique of a graph given an umbrella-free vertex order: the
// complement becomes a partial order (earlier -> later on complement edges),
// a minimum chain cover is computed by matching vertex copies, and the
// uncovered copies form a maximum antichain, which is the clique.
// Throws NotUmbrellaFree (with the first violating triple) if the order is
// not umbrella-free. Result is sorted ascending.
std::vector<int> cocomparability_max_clique(const Graph& g, const std::vector<int>& order);

// Maximum clique of a graph whose vertices split into two cliques. The
// complement is bipartite across the split, so the clique is the complement
// of a Koenig cover of the cross non-edges. Sides must partition the vertex
// set (std::invalid_argument) and each must induce a clique (SidesNotCliques).
// Result is sorted ascending.
std::vector<int> cobipartite_max_clique(const Graph& g, const std::vector<int>& side_a,
                                        const std::vector<int>& side_b);

}  // namespace geoclique
