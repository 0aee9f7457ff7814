#pragma once

#include <random>

#include "defcol/graph.hpp"

namespace testing_support {

using defcol::Graph;

inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
  Graph g;
  for (int v = 0; v < n; ++v) g.add_vertex(v);
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w)
      if (coin(rng)) g.add_edge(u, w);
  return g;
}

/// Every labeled graph on n vertices, one per edge bitmask.
template <typename Visit>
void for_each_graph(int n, Visit&& visit) {
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w) slots.emplace_back(u, w);
  const std::uint64_t total = std::uint64_t{1} << slots.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Graph g;
    for (int v = 0; v < n; ++v) g.add_vertex(v);
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask >> i & 1) g.add_edge(slots[i].first, slots[i].second);
    visit(g);
  }
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g = a;
  const defcol::VertexId off = a.max_id() + 1;
  for (auto v : b.vertices()) g.add_vertex(v + off);
  for (auto [u, w] : b.edges()) g.add_edge(u + off, w + off);
  return g;
}

}  // namespace testing_support
