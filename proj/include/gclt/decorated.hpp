#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gclt/errors.hpp"
#include "gclt/graphons.hpp"
#include "gclt/graphs.hpp"
#include "gclt/scalar.hpp"

namespace gclt {

template <class S>
using small_matrix = std::vector<std::vector<S>>;  // L x L, row major

template <class S>
small_matrix<S> matrix_transpose(const small_matrix<S>& m) {
  const int L = int(m.size());
  small_matrix<S> t(L, std::vector<S>(L));
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) t[j][i] = m[i][j];
  return t;
}

// Matrix-valued step kernel on [0,1]^2: cell (a,b) holds an L x L matrix,
// with W(b,a) = W(a,b)^T and entries in [-1,1].
template <class S>
struct decorated_step_graphon {
  int n = 0;  // cells
  int L = 0;  // decoration dimension
  std::vector<S> breakpoints;
  std::vector<std::vector<small_matrix<S>>> values;  // n x n of L x L

  S measure(int c) const { return breakpoints[c + 1] - breakpoints[c]; }
};

template <class S>
decorated_step_graphon<S> make_decorated_step_graphon(
    std::vector<std::vector<small_matrix<S>>> values, std::vector<S> breakpoints) {
  const int n = int(values.size());
  if (n == 0) fail(errc::dimension_mismatch, "decorated graphon needs at least one cell");
  for (int a = 0; a < n; ++a)
    if (int(values[a].size()) != n)
      fail(errc::dimension_mismatch, "decorated values must form an n x n array");
  const int L = int(values[0][0].size());
  if (L == 0) fail(errc::dimension_mismatch, "decoration dimension must be positive");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (int(values[a][b].size()) != L)
        fail(errc::dimension_mismatch, "decoration matrix at (" + std::to_string(a) + "," +
                                           std::to_string(b) + ") is not " + std::to_string(L) +
                                           "x" + std::to_string(L));
      for (const auto& row : values[a][b])
        if (int(row.size()) != L)
          fail(errc::dimension_mismatch, "decoration matrix at (" + std::to_string(a) + "," +
                                             std::to_string(b) + ") is not square");
      for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
          if (values[a][b][i][j] < S(-1) || values[a][b][i][j] > S(1))
            fail(errc::range_violation, "decoration entry outside [-1,1] at cell (" +
                                            std::to_string(a) + "," + std::to_string(b) + ")");
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
          if (values[a][b][i][j] != values[b][a][j][i])
            fail(errc::asymmetric_input,
                 "transpose symmetry fails between cells (" + std::to_string(a) + "," +
                     std::to_string(b) + ") and (" + std::to_string(b) + "," +
                     std::to_string(a) + ")");
  if (int(breakpoints.size()) != n + 1)
    fail(errc::dimension_mismatch, "need n+1 breakpoints");
  if (breakpoints.front() != S(0) || breakpoints.back() != S(1))
    fail(errc::range_violation, "breakpoints must start at 0 and end at 1");
  for (int i = 0; i < n; ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      fail(errc::range_violation, "breakpoints must be strictly increasing");
  decorated_step_graphon<S> out;
  out.n = n;
  out.L = L;
  out.breakpoints = std::move(breakpoints);
  out.values = std::move(values);
  return out;
}

template <class S>
decorated_step_graphon<S> make_decorated_step_graphon(
    std::vector<std::vector<small_matrix<S>>> values) {
  const int n = int(values.size());
  if (n == 0) fail(errc::dimension_mismatch, "decorated graphon needs at least one cell");
  return make_decorated_step_graphon(std::move(values), uniform_breakpoints<S>(n));
}

// Complete base graph on [n] whose edges carry L x L 0/1 decorations;
// gamma(v,u) is stored implicitly as the transpose of gamma(u,v).
struct decorated_graph {
  int n = 0;
  int L = 0;
  std::map<std::pair<int, int>, small_matrix<int>> gamma;  // keys u < v

  small_matrix<int> decoration(int u, int v) const {
    bool flip = u > v;
    if (flip) std::swap(u, v);
    auto it = gamma.find({u, v});
    small_matrix<int> m =
        it == gamma.end() ? small_matrix<int>(L, std::vector<int>(L, 0)) : it->second;
    return flip ? matrix_transpose(m) : m;
  }
};

// Reads a graph on the (u,i) grid, u in [n], i in [L], encoded as (u-1)*L+i,
// back into per-pair layer patterns: gamma(u,v)[i][j] = 1 iff ((u,i),(v,j))
// is an edge.  Edges within a base vertex are not representable and are
// ignored; callers that need them keep the product graph itself.
inline decorated_graph grid_decoration(const simple_graph& g, int n, int L) {
  if (g.n != n * L)
    fail(errc::encoding_error, "graph has " + std::to_string(g.n) + " vertices, grid needs " +
                                   std::to_string(n * L));
  decorated_graph out;
  out.n = n;
  out.L = L;
  for (auto [x, y] : g.edges) {
    int u = (x - 1) / L + 1, i = (x - 1) % L + 1;
    int v = (y - 1) / L + 1, j = (y - 1) % L + 1;
    if (u < 1 || u > n || v < 1 || v > n)
      fail(errc::encoding_error, "vertex outside grid");
    if (u == v) continue;
    if (u > v) {
      std::swap(u, v);
      std::swap(i, j);
    }
    auto& m = out.gamma.try_emplace({u, v}, small_matrix<int>(L, std::vector<int>(L, 0)))
                  .first->second;
    m[i - 1][j - 1] = 1;
  }
  return out;
}

// Edge-decorated pattern (f, beta): every edge u < v of f carries an L x L
// matrix pairing against the kernel values.
template <class S>
struct decorated_pattern {
  simple_graph f;
  int L = 0;
  std::map<std::pair<int, int>, small_matrix<S>> beta;  // keys u < v, edges of f
};

// rho(F, W) = sum over cell assignments of prod measures * prod_e <beta(e), W(..)>
// where <A, B> = sum_ij A_ij B_ij.
template <class S>
S decorated_hom_density(const decorated_pattern<S>& F, const decorated_step_graphon<S>& W) {
  if (F.L != W.L)
    fail(errc::grid_mismatch, "pattern decoration dimension " + std::to_string(F.L) +
                                  " != kernel dimension " + std::to_string(W.L));
  const int k = F.f.n;
  if (k > kMaxHomVertices)
    fail(errc::size_limit, "decorated_hom_density limited to <= " +
                               std::to_string(kMaxHomVertices) + " vertices");
  for (auto [uv, m] : F.beta) {
    if (!F.f.has_edge(uv.first, uv.second))
      fail(errc::dimension_mismatch, "decoration on a non-edge");
    if (int(m.size()) != F.L)
      fail(errc::dimension_mismatch, "edge decoration is not L x L");
  }
  for (auto [u, v] : F.f.edges)
    if (!F.beta.count({u, v})) fail(errc::dimension_mismatch, "edge without decoration");
  detail::check_hom_work(size_t(k), W.n);
  std::vector<int> c(k, 0);
  S tot(0);
  while (true) {
    S term(1);
    for (int v = 0; v < k; ++v) term *= W.measure(c[v]);
    for (const auto& [uv, beta] : F.beta) {
      const small_matrix<S>& M = W.values[c[uv.first - 1]][c[uv.second - 1]];
      S pair_sum(0);
      for (int i = 0; i < F.L; ++i)
        for (int j = 0; j < F.L; ++j) pair_sum += beta[i][j] * M[i][j];
      term *= pair_sum;
    }
    tot += term;
    int i = k - 1;
    while (i >= 0 && c[i] == W.n - 1) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }
  return tot;
}

// Limit kernel of layered products g_{n,L}: on the diagonal decoration slot it
// behaves like w, off the diagonal it is the 0/1 pattern of the layer graph.
template <class S>
decorated_step_graphon<S> decorated_limit_of_lex(const simple_graph& layer,
                                                 const step_graphon<S>& w) {
  const int L = layer.n;
  const int n = w.d;
  std::vector<std::vector<small_matrix<S>>> vals(
      n, std::vector<small_matrix<S>>(n, small_matrix<S>(L, std::vector<S>(L, S(0)))));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
          vals[a][b][i][j] = i == j ? w.values[a][b] : S(layer.has_edge(i + 1, j + 1) ? 1 : 0);
  return make_decorated_step_graphon<S>(std::move(vals), w.breakpoints);
}

}  // namespace gclt
