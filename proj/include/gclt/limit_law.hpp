#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gclt/decorated.hpp"
#include "gclt/eig.hpp"
#include "gclt/errors.hpp"
#include "gclt/graphons.hpp"
#include "gclt/partitions.hpp"
#include "gclt/scalar.hpp"

namespace gclt {

inline constexpr int kMaxMomentOrder = 12;
inline constexpr int kMaxMultivariateLen = 10;

namespace detail {

// Labeled crossing-graph key of a pairing: block count plus an edge bitmask.
// Pairings sharing the key share their hom density, so each distinct graph is
// integrated once.
inline std::pair<int, std::uint64_t> crossing_key(const set_partition& pi) {
  const int m = pi.block_count();
  std::uint64_t mask = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (blocks_cross(pi.blocks[a], pi.blocks[b]))
        mask |= std::uint64_t(1) << (a * m + b);
  return {m, mask};
}

inline simple_graph graph_from_crossing_key(int m, std::uint64_t mask) {
  simple_graph g = simple_graph::edgeless(m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (mask >> (a * m + b) & 1) g.edges.insert({a + 1, b + 1});
  return g;
}

template <class S>
S pairing_hom_sum(const std::vector<set_partition>& pairings, const step_graphon<S>& w,
                  const std::vector<S>& vweight) {
  std::map<std::pair<int, std::uint64_t>, long> classes;
  for (const auto& pi : pairings) ++classes[crossing_key(pi)];
  S tot(0);
  for (const auto& [key, count] : classes) {
    simple_graph f = graph_from_crossing_key(key.first, key.second);
    tot += S(count) * hom_density_weighted(f, w, vweight);
  }
  return tot;
}

template <class S>
std::vector<S> graphon_vertex_weights(const step_graphon<S>& w, const std::vector<S>* h) {
  std::vector<S> vw = w.measures();
  if (h) {
    if (int(h->size()) != w.d)
      fail(errc::grid_mismatch, "h must be a step function on the graphon cells");
    for (int c = 0; c < w.d; ++c) vw[c] *= (*h)[c] * (*h)[c];
  }
  return vw;
}

inline void check_moment_order(int P) {
  if (P < 1 || P > kMaxMomentOrder)
    fail(errc::size_limit,
         "moment order limited to 1.." + std::to_string(kMaxMomentOrder));
}

}  // namespace detail

// Moments of the limit law mu_w: the 2p-th moment sums hom densities of the
// crossing graphs of all pair partitions of [2p]; odd moments vanish.  The
// optional step function h reweights every vertex integral by |h|^2
// (moments of mu_{w,h}).
template <class S>
std::vector<S> mu_w_moments(const step_graphon<S>& w, int P, const std::vector<S>* h = nullptr) {
  detail::check_moment_order(P);
  std::vector<S> vw = detail::graphon_vertex_weights(w, h);
  std::vector<S> out(P, S(0));
  for (int p = 2; p <= P; p += 2)
    out[p - 1] = detail::pairing_hom_sum(enumerate_pair_partitions(p), w, vw);
  return out;
}

template <class S>
std::vector<S> mu_w_moments(const step_graphon<S>& w, int P, const std::vector<S>& h) {
  return mu_w_moments(w, P, &h);
}

// Free cumulants of mu_w: same sums restricted to pairings with connected
// crossing graph.
template <class S>
std::vector<S> mu_w_free_cumulants(const step_graphon<S>& w, int P,
                                   const std::vector<S>* h = nullptr) {
  detail::check_moment_order(P);
  std::vector<S> vw = detail::graphon_vertex_weights(w, h);
  std::vector<S> out(P, S(0));
  for (int p = 2; p <= P; p += 2)
    out[p - 1] = detail::pairing_hom_sum(connected_pair_partitions(p), w, vw);
  return out;
}

// q-Gaussian moments: sum of q^(crossing count) over pair partitions.
template <class S>
std::vector<S> q_gaussian_moments(const S& q, int P) {
  detail::check_moment_order(P);
  std::vector<S> out(P, S(0));
  for (int p = 2; p <= P; p += 2) {
    S tot(0);
    for (const auto& pi : enumerate_pair_partitions(p)) tot += scalar_pow(q, crossing_count(pi));
    out[p - 1] = tot;
  }
  return out;
}

// Support bound for mu_w from q = sup w: [-2/sqrt(1-q), 2/sqrt(1-q)] when
// q < 1, unbounded otherwise (Gaussian-type tails).
struct support_bound_result {
  bool bounded = false;
  double radius = 0;   // meaningful when bounded
  rat radius_sq = 0;   // exact 4/(1-q) when bounded
};

template <class S>
support_bound_result support_bound(const step_graphon<S>& w) {
  S q = w.sup_value();
  support_bound_result out;
  if (q >= S(1)) return out;
  rat qe = is_exact_v<S> ? rat(q) : rat(to_double(q));
  out.bounded = true;
  out.radius_sq = rat(4) / (rat(1) - qe);
  out.radius = 2.0 / std::sqrt(1.0 - to_double(q));
  return out;
}

inline support_bound_result support_bound(const functional_graphon& w) {
  support_bound_result out;
  if (w.sup_value >= 1.0) return out;
  out.bounded = true;
  out.radius_sq = rat(4) / (rat(1) - rat(w.sup_value));
  out.radius = 2.0 / std::sqrt(1.0 - w.sup_value);
  return out;
}

// Mixed moment tau(s_{l_1} ... s_{l_p}) of the family attached to a decorated
// kernel: pairings refining ker(l), each weighted by the decorated hom density
// whose edge (a,b) pairs the basis matrix P_{l_a, l_b} against the kernel,
// i.e. picks matrix entry (l_a, l_b).
template <class S>
S multivariate_moment(const decorated_step_graphon<S>& W, const std::vector<int>& l) {
  const int p = int(l.size());
  if (p < 1 || p > kMaxMultivariateLen)
    fail(errc::size_limit,
         "multivariate words limited to length <= " + std::to_string(kMaxMultivariateLen));
  for (int x : l)
    if (x < 1 || x > W.L)
      fail(errc::label_out_of_range,
           "label " + std::to_string(x) + " outside 1.." + std::to_string(W.L));
  if (p % 2 != 0) return S(0);
  S tot(0);
  for (const auto& pi : enumerate_pair_partitions(p)) {
    if (!refines_kernel(pi, l)) continue;
    const int m = pi.block_count();
    std::vector<int> lab(m);
    for (int b = 0; b < m; ++b) lab[b] = l[pi.blocks[b][0] - 1];
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        if (blocks_cross(pi.blocks[a], pi.blocks[b])) edges.push_back({a, b});
    detail::check_hom_work(size_t(m), W.n);
    std::vector<int> c(m, 0);
    S rho(0);
    while (true) {
      S term(1);
      for (int v = 0; v < m; ++v) term *= W.measure(c[v]);
      for (auto [a, b] : edges) term *= W.values[c[a]][c[b]][lab[a] - 1][lab[b] - 1];
      rho += term;
      int i = m - 1;
      while (i >= 0 && c[i] == W.n - 1) c[i--] = 0;
      if (i < 0) break;
      ++c[i];
    }
    tot += rho;
  }
  return tot;
}

// ---------------------------------------------------------------------------
// mixed q-Gaussian families

struct mixed_q_matrix {
  int n = 0;
  std::vector<std::vector<rat>> q;  // symmetric, entries in [-1,1], diagonal included
};

inline mixed_q_matrix make_mixed_q_matrix(std::vector<std::vector<rat>> q) {
  const int n = int(q.size());
  if (n == 0) fail(errc::dimension_mismatch, "mixed-q matrix needs at least one row");
  for (int i = 0; i < n; ++i)
    if (int(q[i].size()) != n) fail(errc::dimension_mismatch, "mixed-q matrix must be square");
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (q[i][j] != q[j][i])
        fail(errc::asymmetric_input, "q[" + std::to_string(i) + "][" + std::to_string(j) +
                                         "] != q[" + std::to_string(j) + "][" +
                                         std::to_string(i) + "]");
      if (q[i][j] < -1 || q[i][j] > 1)
        fail(errc::range_violation, "mixed-q entries must lie in [-1,1]");
    }
  return mixed_q_matrix{n, std::move(q)};
}

// The step graphon with uniform cells and values q_ij (diagonal included).
inline step_graphon<rat> mixed_q_graphon(const mixed_q_matrix& Q) {
  return make_step_graphon<rat>(Q.q);
}

// tau(s_{i_1} ... s_{i_p}) = sum over pairings refining ker(i) of
// prod over crossing block pairs q_{i_a, i_b}.
inline rat mixed_q_word_moment(const mixed_q_matrix& Q, const std::vector<int>& word) {
  const int p = int(word.size());
  if (p < 1 || p > kMaxMomentOrder)
    fail(errc::size_limit,
         "mixed-q words limited to length <= " + std::to_string(kMaxMomentOrder));
  for (int x : word)
    if (x < 1 || x > Q.n)
      fail(errc::index_out_of_range,
           "index " + std::to_string(x) + " outside 1.." + std::to_string(Q.n));
  if (p % 2 != 0) return 0;
  rat tot(0);
  for (const auto& pi : enumerate_pair_partitions(p)) {
    if (!refines_kernel(pi, word)) continue;
    const int m = pi.block_count();
    rat term(1);
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        if (blocks_cross(pi.blocks[a], pi.blocks[b]))
          term *= Q.q[word[pi.blocks[a][0] - 1] - 1][word[pi.blocks[b][0] - 1] - 1];
    tot += term;
  }
  return tot;
}

// ---------------------------------------------------------------------------
// reduction of mu_{w,h} to a plain mu_{w'}

struct reduced_graphon {
  step_graphon<rat> w;
  rat dilation_sq;  // |h|^2 total mass; mu_{w,h} = dilation * mu_{w'}
  double dilation;
};

// Push w through the quantile map of the density |h|^2: cells with h = 0
// disappear, the others are rescaled to their |h|^2 mass.  Moments satisfy
// m_p(mu_{w,h}) = dilation^p * m_p(mu_{w'}).
inline reduced_graphon reduce_to_plain(const step_graphon<rat>& w, const std::vector<rat>& h) {
  if (int(h.size()) != w.d)
    fail(errc::grid_mismatch, "h must be a step function on the graphon cells");
  rat T(0);
  std::vector<rat> mass(w.d);
  for (int c = 0; c < w.d; ++c) {
    mass[c] = w.measure(c) * h[c] * h[c];
    T += mass[c];
  }
  if (T == 0) fail(errc::zero_function, "h vanishes almost everywhere");
  std::vector<int> kept;
  for (int c = 0; c < w.d; ++c)
    if (mass[c] > 0) kept.push_back(c);
  const int d = int(kept.size());
  std::vector<rat> bp(d + 1, rat(0));
  for (int i = 0; i < d; ++i) bp[i + 1] = bp[i] + mass[kept[i]] / T;
  bp[d] = 1;
  std::vector<std::vector<rat>> vals(d, std::vector<rat>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) vals[i][j] = w.values[kept[i]][kept[j]];
  reduced_graphon out{make_step_graphon<rat>(std::move(vals), std::move(bp)), T,
                      std::sqrt(T.convert_to<double>())};
  return out;
}

// ---------------------------------------------------------------------------
// Jacobi (three-term recurrence) coefficients from moments

struct jacobi_data {
  std::vector<rat> a;  // a_0 .. a_{depth-1}
  std::vector<rat> b;  // b_1 .. b_{depth}, all positive
};

namespace detail {
inline rat poly_inner(const std::vector<rat>& u, const std::vector<rat>& v,
                      const std::vector<rat>& m /* m[0]=1, m[j]=j-th moment */) {
  rat s(0);
  for (size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (size_t j = 0; j < v.size(); ++j) {
      if (v[j] == 0) continue;
      s += u[i] * v[j] * m[i + j];
    }
  }
  return s;
}
}  // namespace detail

// Monic orthogonal polynomials p_{k+1} = (x - a_k) p_k - b_k p_{k-1} for the
// moment sequence; needs moments through order 2*depth.  A vanishing or
// negative squared norm means the Hankel form is degenerate at that depth
// (finitely supported or invalid sequence).
inline jacobi_data jacobi_coefficients(const std::vector<rat>& moments, int depth) {
  if (depth < 1) fail(errc::range_violation, "depth must be >= 1");
  if (int(moments.size()) < 2 * depth)
    fail(errc::dimension_mismatch, "need moments through order " + std::to_string(2 * depth));
  std::vector<rat> m(moments.size() + 1);
  m[0] = 1;
  for (size_t i = 0; i < moments.size(); ++i) m[i + 1] = moments[i];
  std::vector<rat> prev;            // p_{k-1}
  std::vector<rat> cur = {rat(1)};  // p_0
  rat norm_prev(0), norm_cur(1);    // <p_0, p_0> = m_0 = 1
  jacobi_data out;
  for (int k = 0; k < depth; ++k) {
    std::vector<rat> xcur(cur.size() + 1, rat(0));
    for (size_t i = 0; i < cur.size(); ++i) xcur[i + 1] = cur[i];
    rat a_k = detail::poly_inner(xcur, cur, m) / norm_cur;
    out.a.push_back(a_k);
    std::vector<rat> next = xcur;
    for (size_t i = 0; i < cur.size(); ++i) next[i] -= a_k * cur[i];
    if (k >= 1) {
      rat b_k = norm_cur / norm_prev;
      for (size_t i = 0; i < prev.size(); ++i) next[i] -= b_k * prev[i];
    }
    rat norm_next = detail::poly_inner(next, next, m);
    rat b_next = norm_next / norm_cur;
    if (!(b_next > 0))
      fail(errc::hankel_degenerate,
           "Hankel form degenerates at depth " + std::to_string(k + 1) +
               " (b_" + std::to_string(k + 1) + " = " + format_rat(b_next) + ")");
    out.b.push_back(b_next);
    prev = std::move(cur);
    cur = std::move(next);
    norm_prev = norm_cur;
    norm_cur = norm_next;
  }
  return out;
}

// Hankel moment matrix H_ij = m_{i+j}, 0 <= i,j <= k (m_0 = 1); its smallest
// eigenvalue is a positivity diagnostic for candidate moment sequences.
inline double hankel_min_eigenvalue(const std::vector<rat>& moments, int k) {
  if (int(moments.size()) < 2 * k)
    fail(errc::dimension_mismatch, "need moments through order " + std::to_string(2 * k));
  std::vector<rat> m(moments.size() + 1);
  m[0] = 1;
  for (size_t i = 0; i < moments.size(); ++i) m[i + 1] = moments[i];
  std::vector<double> H(size_t(k + 1) * (k + 1));
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j) H[size_t(i) * (k + 1) + j] = m[i + j].convert_to<double>();
  return min_symmetric_eigenvalue(H, k + 1);
}

}  // namespace gclt
