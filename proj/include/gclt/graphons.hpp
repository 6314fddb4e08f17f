#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gclt/errors.hpp"
#include "gclt/graphs.hpp"
#include "gclt/scalar.hpp"

namespace gclt {

inline constexpr int kMaxHomVertices = 12;
inline constexpr int kMaxWeightedHomVertices = 8;
inline constexpr long long kMaxHomAssignments = 20'000'000;

// Step graphon: symmetric kernel on [0,1]^2, constant on the cells of a
// breakpoint grid, values in [-1,1].
template <class S>
struct step_graphon {
  int d = 0;
  std::vector<std::vector<S>> values;  // d x d, symmetric
  std::vector<S> breakpoints;          // 0 = b_0 < ... < b_d = 1

  S measure(int c) const { return breakpoints[c + 1] - breakpoints[c]; }

  std::vector<S> measures() const {
    std::vector<S> out(d);
    for (int c = 0; c < d; ++c) out[c] = measure(c);
    return out;
  }

  S sup_value() const {
    S q = values[0][0];
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        if (values[a][b] > q) q = values[a][b];
    return q;
  }

  bool nonnegative() const {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        if (values[a][b] < S(0)) return false;
    return true;
  }
};

template <class S>
std::vector<S> uniform_breakpoints(int d) {
  std::vector<S> b(d + 1);
  for (int i = 0; i <= d; ++i) b[i] = from_rat<S>(rat(i, d));
  return b;
}

template <class S>
step_graphon<S> make_step_graphon(std::vector<std::vector<S>> values,
                                  std::vector<S> breakpoints) {
  const int d = int(values.size());
  if (d == 0) fail(errc::dimension_mismatch, "step graphon needs at least one cell");
  for (int a = 0; a < d; ++a)
    if (int(values[a].size()) != d)
      fail(errc::dimension_mismatch, "values row " + std::to_string(a) + " has length " +
                                         std::to_string(values[a].size()) + ", expected " +
                                         std::to_string(d));
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      bool symmetric;
      if constexpr (is_exact_v<S>)
        symmetric = values[a][b] == values[b][a];
      else
        symmetric = std::abs(values[a][b] - values[b][a]) <= 1e-12;
      if (!symmetric)
        fail(errc::asymmetric_input, "values[" + std::to_string(a) + "][" + std::to_string(b) +
                                         "] != values[" + std::to_string(b) + "][" +
                                         std::to_string(a) + "]");
      values[b][a] = values[a][b];
    }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      if (values[a][b] < S(-1) || values[a][b] > S(1))
        fail(errc::range_violation, "cell value outside [-1,1] at (" + std::to_string(a) + "," +
                                        std::to_string(b) + ")");
  if (int(breakpoints.size()) != d + 1)
    fail(errc::dimension_mismatch, "need " + std::to_string(d + 1) + " breakpoints, got " +
                                       std::to_string(breakpoints.size()));
  if (breakpoints.front() != S(0) || breakpoints.back() != S(1))
    fail(errc::range_violation, "breakpoints must start at 0 and end at 1");
  for (int i = 0; i < d; ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      fail(errc::range_violation, "breakpoints must be strictly increasing");
  return step_graphon<S>{d, std::move(values), std::move(breakpoints)};
}

template <class S>
step_graphon<S> make_step_graphon(std::vector<std::vector<S>> values) {
  const int d = int(values.size());
  if (d == 0) fail(errc::dimension_mismatch, "step graphon needs at least one cell");
  return make_step_graphon(std::move(values), uniform_breakpoints<S>(d));
}

template <class S>
step_graphon<S> constant_graphon(const S& q) {
  return make_step_graphon<S>({{q}});
}

// Two-cell diagonal -1 kernel; its limit law is the centered arcsine law.
template <class S>
step_graphon<S> arcsine_graphon() {
  S m1 = from_rat<S>(rat(-1));
  S z = S(0);
  return make_step_graphon<S>({{m1, z}, {z, m1}});
}

// ---------------------------------------------------------------------------
// homomorphism densities, exact on step graphons

namespace detail {

template <class S>
S component_hom_sum(const std::vector<int>& verts, const simple_graph& f,
                    const step_graphon<S>& w, const std::vector<S>& vweight) {
  const int k = int(verts.size());
  const int d = w.d;
  std::vector<std::pair<int, int>> edges;  // local indices
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (f.has_edge(verts[a], verts[b])) edges.push_back({a, b});
  std::vector<int> c(k, 0);
  S tot(0);
  while (true) {
    S term = vweight[c[0]];
    for (int v = 1; v < k; ++v) term *= vweight[c[v]];
    for (auto [a, b] : edges) term *= w.values[c[a]][c[b]];
    tot += term;
    int i = k - 1;
    while (i >= 0 && c[i] == d - 1) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }
  return tot;
}

inline void check_hom_work(size_t k, int d) {
  double work = 1;
  for (size_t i = 0; i < k; ++i) work *= d;
  if (work > double(kMaxHomAssignments))
    fail(errc::size_limit, "hom_density cell-assignment count too large");
}

}  // namespace detail

// rho(f, w) with an arbitrary per-cell vertex weight; the plain density uses
// the cell measures.  Multiplicative over the connected components of f.
template <class S>
S hom_density_weighted(const simple_graph& f, const step_graphon<S>& w,
                       const std::vector<S>& vweight) {
  if (int(vweight.size()) != w.d)
    fail(errc::grid_mismatch, "vertex weight vector does not match graphon cells");
  if (f.n > kMaxHomVertices)
    fail(errc::size_limit, "hom_density limited to patterns with <= " +
                               std::to_string(kMaxHomVertices) + " vertices");
  S total(1);
  for (const auto& comp : connected_components(f)) {
    if (comp.size() == 1) {
      S s(0);
      for (int c = 0; c < w.d; ++c) s += vweight[c];
      total *= s;
    } else {
      detail::check_hom_work(comp.size(), w.d);
      total *= detail::component_hom_sum(comp, f, w, vweight);
    }
  }
  return total;
}

template <class S>
S hom_density(const simple_graph& f, const step_graphon<S>& w) {
  return hom_density_weighted(f, w, w.measures());
}

// ---------------------------------------------------------------------------
// functional graphons: double-precision kernels integrated by quadrature

struct quadrature_config {
  int gl_order = 24;
  int gl_order_fine = 48;
  long long mc_samples = 400000;
  std::uint64_t mc_seed = 0x9e3779b97f4a7c15ull;
  double gl_tolerance = 1e-6;   // applied on the tensor Gauss-Legendre path
  double mc_tolerance = 5e-2;   // applied on the Monte Carlo path (|V(f)| > 4)
};

// The range bounds are declared by the caller; a sup is never estimated.
struct functional_graphon {
  std::function<double(double, double)> w;
  double sup_value = 1.0;
  double inf_value = -1.0;
  quadrature_config quad{};
};

namespace detail {
inline double u53(std::mt19937_64& rng) {
  return double(rng() >> 11) * (1.0 / 9007199254740992.0);
}
}  // namespace detail

inline functional_graphon make_functional_graphon(std::function<double(double, double)> w,
                                                  double sup_value, double inf_value,
                                                  quadrature_config quad = {}) {
  if (!(inf_value <= sup_value) || sup_value > 1.0 || inf_value < -1.0)
    fail(errc::range_violation, "declared bounds must satisfy -1 <= inf <= sup <= 1");
  std::mt19937_64 rng(0xc0ffee);
  for (int i = 0; i < 64; ++i) {
    double x = detail::u53(rng), y = detail::u53(rng);
    if (std::abs(w(x, y) - w(y, x)) > 1e-12)
      fail(errc::asymmetric_input, "kernel fails symmetry spot check at (" + format_double(x) +
                                       "," + format_double(y) + ")");
  }
  return functional_graphon{std::move(w), sup_value, inf_value, quad};
}

template <class S>
functional_graphon as_functional(const step_graphon<S>& w, quadrature_config quad = {}) {
  std::vector<double> bp(w.breakpoints.size());
  for (size_t i = 0; i < bp.size(); ++i) bp[i] = to_double(w.breakpoints[i]);
  std::vector<std::vector<double>> vals(w.d, std::vector<double>(w.d));
  double sup = -2, inf = 2;
  for (int a = 0; a < w.d; ++a)
    for (int b = 0; b < w.d; ++b) {
      vals[a][b] = to_double(w.values[a][b]);
      sup = std::max(sup, vals[a][b]);
      inf = std::min(inf, vals[a][b]);
    }
  const int d = w.d;
  auto cell = [bp, d](double x) {
    int c = d - 1;
    for (int i = 1; i <= d; ++i)
      if (x < bp[i]) {
        c = i - 1;
        break;
      }
    return c;
  };
  auto fn = [vals, cell](double x, double y) { return vals[cell(x)][cell(y)]; };
  return functional_graphon{fn, sup, inf, quad};
}

namespace detail {

struct gl_rule {
  std::vector<double> nodes;    // on [0,1]
  std::vector<double> weights;  // sum to 1
};

// Gauss-Legendre rule by Newton iteration on P_n.
inline gl_rule gauss_legendre(int n) {
  gl_rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[n - 1 - i] = 0.5 * (x + 1);
    r.weights[n - 1 - i] = 0.5 * (2.0 / ((1 - x * x) * dp * dp));
  }
  return r;
}

inline const gl_rule& cached_gl(int n) {
  static std::map<int, gl_rule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

inline double gl_tensor_integral(const simple_graph& f, const functional_graphon& w, int order) {
  const gl_rule& r = cached_gl(order);
  const int k = f.n;
  std::vector<std::pair<int, int>> edges(f.edges.begin(), f.edges.end());
  // pairwise kernel values on the node grid, evaluated once
  std::vector<std::vector<double>> W(order, std::vector<double>(order));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) W[i][j] = w.w(r.nodes[i], r.nodes[j]);
  std::vector<int> c(k, 0);
  double tot = 0;
  while (true) {
    double term = 1;
    for (int v = 0; v < k; ++v) term *= r.weights[c[v]];
    for (auto [u, v] : edges) term *= W[c[u - 1]][c[v - 1]];
    tot += term;
    int i = k - 1;
    while (i >= 0 && c[i] == order - 1) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }
  return tot;
}

}  // namespace detail

struct rho_estimate {
  double value = 0;
  double error_estimate = 0;
  bool monte_carlo = false;
};

// Quadrature route: tensor Gauss-Legendre for |V(f)| <= 4 (coarse/fine pair
// gives the error estimate), seeded Monte Carlo beyond that.
inline rho_estimate hom_density(const simple_graph& f, const functional_graphon& w) {
  if (f.n > kMaxHomVertices)
    fail(errc::size_limit, "hom_density limited to patterns with <= " +
                               std::to_string(kMaxHomVertices) + " vertices");
  rho_estimate out;
  if (f.n <= 4) {
    double coarse = detail::gl_tensor_integral(f, w, w.quad.gl_order);
    double fine = detail::gl_tensor_integral(f, w, w.quad.gl_order_fine);
    out.value = fine;
    out.error_estimate = 3 * std::abs(coarse - fine) + 1e-14;
    if (out.error_estimate > w.quad.gl_tolerance)
      fail(errc::quadrature_failure, "Gauss-Legendre error estimate " +
                                         format_double(out.error_estimate) + " above tolerance");
    return out;
  }
  std::mt19937_64 rng(w.quad.mc_seed);
  std::vector<std::pair<int, int>> edges(f.edges.begin(), f.edges.end());
  std::vector<double> x(f.n);
  double sum = 0, sumsq = 0;
  const long long N = w.quad.mc_samples;
  for (long long s = 0; s < N; ++s) {
    for (int v = 0; v < f.n; ++v) x[v] = detail::u53(rng);
    double term = 1;
    for (auto [u, v] : edges) term *= w.w(x[u - 1], x[v - 1]);
    sum += term;
    sumsq += term * term;
  }
  double mean = sum / double(N);
  double var = std::max(0.0, sumsq / double(N) - mean * mean);
  out.value = mean;
  out.error_estimate = 4 * std::sqrt(var / double(N)) + 1e-15;
  out.monte_carlo = true;
  if (out.error_estimate > w.quad.mc_tolerance)
    fail(errc::quadrature_failure, "Monte Carlo error estimate " +
                                       format_double(out.error_estimate) + " above tolerance");
  return out;
}

// ---------------------------------------------------------------------------
// node-weighted graphs and homomorphism counts

struct node_weighted_graph {
  simple_graph g;
  std::vector<rat> alpha;  // one weight per vertex, >= 0, positive total

  rat total() const {
    rat t(0);
    for (const rat& a : alpha) t += a;
    return t;
  }
};

inline node_weighted_graph make_node_weighted_graph(simple_graph g, std::vector<rat> alpha) {
  if (int(alpha.size()) != g.n)
    fail(errc::dimension_mismatch, "need one weight per vertex");
  for (const rat& a : alpha)
    if (a < 0) fail(errc::range_violation, "vertex weights must be nonnegative");
  node_weighted_graph out{std::move(g), std::move(alpha)};
  if (out.total() == 0) fail(errc::zero_total_weight, "vertex weights sum to zero");
  return out;
}

// Step graphon of a (node-weighted) graph: cell c spans the normalized weight
// of vertex c, cells are the 0/1 adjacency pattern.  Zero-weight vertices
// span empty intervals and are dropped.
inline step_graphon<rat> weighted_graphon(const node_weighted_graph& gw) {
  const rat T = gw.total();
  std::vector<int> kept;
  for (int v = 1; v <= gw.g.n; ++v)
    if (gw.alpha[v - 1] > 0) kept.push_back(v);
  const int d = int(kept.size());
  std::vector<rat> bp(d + 1, rat(0));
  for (int i = 0; i < d; ++i) bp[i + 1] = bp[i] + gw.alpha[kept[i] - 1] / T;
  bp[d] = rat(1);
  std::vector<std::vector<rat>> vals(d, std::vector<rat>(d, rat(0)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (gw.g.has_edge(kept[i], kept[j])) vals[i][j] = 1;
  return make_step_graphon<rat>(std::move(vals), std::move(bp));
}

inline step_graphon<rat> graphon_of(const simple_graph& g) {
  return weighted_graphon(make_node_weighted_graph(g, std::vector<rat>(g.n, rat(1))));
}

struct hom_count_result {
  rat rho;       // weighted homomorphism density
  rat rho_inj;   // injective maps only, same normalization
  rat bound;     // |rho - rho_inj| <= C(k,2) * max weight / total weight
};

inline hom_count_result hom_counts(const simple_graph& f, const node_weighted_graph& gw) {
  const int k = f.n;
  const int n = gw.g.n;
  if (k > kMaxWeightedHomVertices)
    fail(errc::size_limit, "hom_counts limited to patterns with <= " +
                               std::to_string(kMaxWeightedHomVertices) + " vertices");
  double work = 1;
  for (int i = 0; i < k; ++i) work *= n;
  if (work > double(kMaxHomAssignments))
    fail(errc::size_limit, "hom_counts map count too large");
  const rat T = gw.total();
  rat alpha_max(0);
  for (const rat& a : gw.alpha) alpha_max = std::max(alpha_max, a);
  std::vector<std::pair<int, int>> edges(f.edges.begin(), f.edges.end());
  auto adj = adjacency_bits(gw.g);
  std::vector<int> phi(k, 1);
  rat hom(0), inj(0);
  while (true) {
    bool ok = true;
    for (auto [u, v] : edges) {
      int a = phi[u - 1], b = phi[v - 1];
      if (a == b || !(adj[a - 1] >> (b - 1) & 1)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      rat wgt(1);
      for (int v = 0; v < k; ++v) wgt *= gw.alpha[phi[v] - 1];
      hom += wgt;
      bool distinct = true;
      for (int a = 0; a < k && distinct; ++a)
        for (int b = a + 1; b < k; ++b)
          if (phi[a] == phi[b]) {
            distinct = false;
            break;
          }
      if (distinct) inj += wgt;
    }
    int i = k - 1;
    while (i >= 0 && phi[i] == n) phi[i--] = 1;
    if (i < 0) break;
    ++phi[i];
  }
  rat norm = scalar_pow(T, k);
  hom_count_result out;
  out.rho = hom / norm;
  out.rho_inj = inj / norm;
  out.bound = rat(binomial(k, 2)) * alpha_max / T;
  return out;
}

// ---------------------------------------------------------------------------
// convolution graphons

enum class conv_kind { classical, free };

// Glue two graphons along a lambda split of [0,1]: diagonal blocks carry the
// rescaled inputs, off-diagonal blocks are 1 (classical) or 0 (free).
template <class S>
step_graphon<S> convolution_graphon(const step_graphon<S>& w1, const step_graphon<S>& w2,
                                    const S& lambda, conv_kind kind) {
  if (!(lambda > S(0) && lambda < S(1)))
    fail(errc::range_violation, "lambda must lie strictly between 0 and 1");
  const int d = w1.d + w2.d;
  std::vector<S> bp;
  bp.reserve(d + 1);
  for (int i = 0; i <= w1.d; ++i) bp.push_back(lambda * w1.breakpoints[i]);
  for (int j = 1; j <= w2.d; ++j) bp.push_back(lambda + (S(1) - lambda) * w2.breakpoints[j]);
  const S off = kind == conv_kind::classical ? S(1) : S(0);
  std::vector<std::vector<S>> vals(d, std::vector<S>(d, off));
  for (int a = 0; a < w1.d; ++a)
    for (int b = 0; b < w1.d; ++b) vals[a][b] = w1.values[a][b];
  for (int a = 0; a < w2.d; ++a)
    for (int b = 0; b < w2.d; ++b) vals[w1.d + a][w1.d + b] = w2.values[a][b];
  return make_step_graphon<S>(std::move(vals), std::move(bp));
}

// ---------------------------------------------------------------------------
// W-random graphs

// G(n, w): vertex positions x_1..x_n are iid uniform (drawn first, in vertex
// order), then each pair u < v in lexicographic order gets an edge with
// probability w(x_u, x_v).  Requires a nonnegative kernel.
template <class S>
simple_graph sample_w_random_graph(const step_graphon<S>& w, int n, std::uint64_t seed) {
  if (!w.nonnegative())
    fail(errc::negative_values, "W-random sampling needs a nonnegative graphon");
  if (n < 1) fail(errc::range_violation, "need n >= 1");
  std::vector<double> bp(w.breakpoints.size());
  for (size_t i = 0; i < bp.size(); ++i) bp[i] = to_double(w.breakpoints[i]);
  std::vector<std::vector<double>> vals(w.d, std::vector<double>(w.d));
  for (int a = 0; a < w.d; ++a)
    for (int b = 0; b < w.d; ++b) vals[a][b] = to_double(w.values[a][b]);
  auto cell = [&](double x) {
    for (int i = 1; i <= w.d; ++i)
      if (x < bp[i]) return i - 1;
    return w.d - 1;
  };
  std::mt19937_64 rng(seed);
  std::vector<int> cx(n);
  for (int i = 0; i < n; ++i) cx[i] = cell(detail::u53(rng));
  simple_graph g = simple_graph::edgeless(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (detail::u53(rng) < vals[cx[u - 1]][cx[v - 1]]) g.edges.insert({u, v});
  return g;
}

}  // namespace gclt
