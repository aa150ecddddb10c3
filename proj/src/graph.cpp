#include "geoclique/graph.hpp"

#include <bit>
#include <stdexcept>

namespace geoclique {

bool Bitset::any() const {
  for (auto w : w_)
    if (w) return true;
  return false;
}

int Bitset::count() const {
  int c = 0;
  for (auto w : w_) c += std::popcount(w);
  return c;
}

int Bitset::first() const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k]) return static_cast<int>(k * 64 + std::countr_zero(w_[k]));
  return -1;
}

int Bitset::next(int i) const {
  ++i;
  if (i >= n_) return -1;
  std::size_t k = static_cast<std::size_t>(i) >> 6;
  std::uint64_t w = w_[k] & (~std::uint64_t{0} << (i & 63));
  while (true) {
    if (w) return static_cast<int>(k * 64 + std::countr_zero(w));
    if (++k == w_.size()) return -1;
    w = w_[k];
  }
}

bool Bitset::intersects(const Bitset& o) const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k] & o.w_[k]) return true;
  return false;
}

Bitset& Bitset::operator&=(const Bitset& o) {
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
  return *this;
}

Bitset& Bitset::operator|=(const Bitset& o) {
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
  return *this;
}

Bitset& Bitset::operator-=(const Bitset& o) {
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
  return *this;
}

std::vector<int> Bitset::to_vector() const {
  std::vector<int> out;
  for (int i = first(); i >= 0; i = next(i)) out.push_back(i);
  return out;
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("Graph: self loop");
  adj_[u].set(v);
  adj_[v].set(u);
}

long Graph::edge_count() const {
  long twice = 0;
  for (const auto& row : adj_) twice += row.count();
  return twice / 2;
}

Graph Graph::complement() const {
  Graph g(n_);
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (!adj_[u].test(v)) g.add_edge(u, v);
  return g;
}

Graph Graph::induced(const std::vector<int>& verts) const {
  Graph g(static_cast<int>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (adj_[verts[i]].test(verts[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
  return g;
}

bool Graph::is_clique(const std::vector<int>& verts) const {
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (!adj_[verts[i]].test(verts[j])) return false;
  return true;
}

bool Graph::is_independent_set(const std::vector<int>& verts) const {
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (adj_[verts[i]].test(verts[j])) return false;
  return true;
}

}  // namespace geoclique
