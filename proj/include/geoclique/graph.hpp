#pragma once

#include <cstdint>
#include <vector>

namespace geoclique {

// Fixed-capacity dynamic bitset over 64-bit words, sized at construction.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int capacity() const { return n_; }
  void set(int i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  bool any() const;
  int count() const;
  int first() const;        // lowest set bit, -1 if none
  int next(int i) const;    // lowest set bit > i, -1 if none
  bool intersects(const Bitset& o) const;

  Bitset& operator&=(const Bitset& o);
  Bitset& operator|=(const Bitset& o);
  Bitset& operator-=(const Bitset& o);  // and-not

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }
  friend bool operator==(const Bitset& a, const Bitset& b) { return a.n_ == b.n_ && a.w_ == b.w_; }

  std::vector<int> to_vector() const;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(n, Bitset(n)) {}

  int size() const { return n_; }
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const { return adj_[u].test(v); }
  const Bitset& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return adj_[v].count(); }
  long edge_count() const;

  Graph complement() const;
  // Subgraph induced by `verts`; vertex i of the result is verts[i].
  Graph induced(const std::vector<int>& verts) const;

  bool is_clique(const std::vector<int>& verts) const;
  bool is_independent_set(const std::vector<int>& verts) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

 private:
  int n_ = 0;
  std::vector<Bitset> adj_;
};

}  // namespace geoclique
