#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gclt/errors.hpp"

namespace gclt {

// Finite simple graph on vertices 1..n (loopless, undirected).
struct simple_graph {
  int n = 0;
  std::set<std::pair<int, int>> edges;  // normalized u < v

  bool has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return edges.count({u, v}) != 0;
  }

  void add_edge(int u, int v) {
    if (u < 1 || u > n || v < 1 || v > n)
      fail(errc::range_violation, "edge endpoint outside 1.." + std::to_string(n));
    if (u == v) fail(errc::range_violation, "loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    edges.insert({u, v});
  }

  static simple_graph edgeless(int n) { return simple_graph{n, {}}; }

  static simple_graph complete(int n) {
    simple_graph g{n, {}};
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v) g.edges.insert({u, v});
    return g;
  }

  static simple_graph path(int n) {
    simple_graph g{n, {}};
    for (int u = 1; u < n; ++u) g.edges.insert({u, u + 1});
    return g;
  }

  static simple_graph cycle(int n) {
    simple_graph g = path(n);
    if (n >= 3) g.edges.insert({1, n});
    return g;
  }

  bool operator==(const simple_graph& o) const { return n == o.n && edges == o.edges; }
};

// Row bitmasks (0-based) for fast adjacency tests in inner loops; n <= 64.
inline std::vector<std::uint64_t> adjacency_bits(const simple_graph& g) {
  std::vector<std::uint64_t> rows(g.n, 0);
  for (auto [u, v] : g.edges) {
    rows[u - 1] |= std::uint64_t(1) << (v - 1);
    rows[v - 1] |= std::uint64_t(1) << (u - 1);
  }
  return rows;
}

inline std::vector<std::vector<int>> connected_components(const simple_graph& g) {
  std::vector<int> parent(g.n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : g.edges) parent[find(u)] = find(v);
  std::vector<std::vector<int>> comps;
  std::vector<int> where(g.n + 1, -1);
  for (int v = 1; v <= g.n; ++v) {
    int r = find(v);
    if (where[r] < 0) {
      where[r] = int(comps.size());
      comps.emplace_back();
    }
    comps[where[r]].push_back(v);
  }
  return comps;
}

inline bool is_connected(const simple_graph& g) {
  return g.n <= 1 || connected_components(g).size() == 1;
}

// Layered product used by the decorated model: vertices are pairs (u, i) with
// u in the base graph and i in the layer graph, encoded as (u-1)*L + i.
// Edges: ((u,i),(v,i)) for base edges (u,v), plus ((u,i),(v,j)) whenever
// (i,j) is a layer edge, for every u, v (including u = v).
inline simple_graph lexicographic_product(const simple_graph& layer, const simple_graph& base) {
  const int L = layer.n;
  simple_graph out = simple_graph::edgeless(base.n * L);
  auto code = [&](int u, int i) { return (u - 1) * L + i; };
  for (auto [u, v] : base.edges)
    for (int i = 1; i <= L; ++i) out.add_edge(code(u, i), code(v, i));
  for (auto [i, j] : layer.edges)
    for (int u = 1; u <= base.n; ++u)
      for (int v = 1; v <= base.n; ++v) out.add_edge(code(u, i), code(v, j));
  return out;
}

}  // namespace gclt
