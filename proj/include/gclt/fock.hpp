#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gclt/eig.hpp"
#include "gclt/errors.hpp"
#include "gclt/graphons.hpp"
#include "gclt/scalar.hpp"

namespace gclt {

inline constexpr int kMaxFockOrder = 10;
inline constexpr long long kMaxFockTensorEntries = 10'000'000;
inline constexpr int kMaxGramLevel = 5;
inline constexpr int kMaxGramCells = 3;

// Finitely supported element of the full Fock space over step functions on a
// d-cell grid.  Functions constant on cells stay constant on cells under all
// operators below, so working on this subspace is exact, not a truncation
// error.  Level tensors are dense, flat, row-major with slot 0 most
// significant; level 0 is the Omega coefficient.
template <typename S>
struct fock_state {
  int d = 1;
  std::vector<S> measures;
  std::map<int, std::vector<S>> levels;

  static fock_state vacuum(const step_graphon<S>& w) {
    fock_state st;
    st.d = w.d;
    st.measures = w.measures();
    st.levels[0] = {S(1)};
    return st;
  }

  S vacuum_coefficient() const {
    auto it = levels.find(0);
    return it == levels.end() ? S(0) : it->second[0];
  }

  fock_state& operator+=(const fock_state& o) {
    if (o.d != d) fail(errc::grid_mismatch, "cannot add states on different grids");
    for (const auto& [lvl, t] : o.levels) {
      auto& mine = levels[lvl];
      if (mine.empty()) mine.assign(t.size(), S(0));
      for (size_t i = 0; i < t.size(); ++i) mine[i] += t[i];
    }
    return *this;
  }

  void prune_above(int max_level) {
    for (auto it = levels.begin(); it != levels.end();)
      it = it->first > max_level ? levels.erase(it) : std::next(it);
  }
};

namespace detail {

inline void check_grid(int d, size_t h_size) {
  if (int(h_size) != d)
    fail(errc::grid_mismatch, "step function has " + std::to_string(h_size) +
                                  " cells, graphon grid has " + std::to_string(d));
}

inline long long pow_ll(int b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace detail

// c(h): tensor h on from the left; level l tensor g becomes h (x) g.
template <typename S>
fock_state<S> apply_creation(const fock_state<S>& state, const std::vector<S>& h) {
  detail::check_grid(state.d, h.size());
  fock_state<S> out;
  out.d = state.d;
  out.measures = state.measures;
  for (const auto& [lvl, t] : state.levels) {
    std::vector<S> up(t.size() * state.d, S(0));
    for (int b = 0; b < state.d; ++b) {
      if (h[b] == 0) continue;
      for (size_t i = 0; i < t.size(); ++i) up[b * t.size() + i] = h[b] * t[i];
    }
    out.levels[lvl + 1] = std::move(up);
  }
  return out;
}

// c(h)*: the adjoint annihilator.  Acting on a level-l tensor g,
//   [c(h)* g](x_1,...,x_{l-1})
//     = sum_{k=1}^{l} integral prod_{j<k} w(x_j, y) h(y) g(x_1,..,y at k,..) dy,
// the integral realized as a measure-weighted cell sum.  Level 0 maps to zero.
template <typename S>
fock_state<S> apply_annihilation_star(const fock_state<S>& state, const std::vector<S>& h,
                                      const step_graphon<S>& w) {
  detail::check_grid(state.d, h.size());
  if (w.d != state.d) fail(errc::grid_mismatch, "graphon grid does not match state");
  const int d = state.d;
  fock_state<S> out;
  out.d = d;
  out.measures = state.measures;
  for (const auto& [lvl, t] : state.levels) {
    if (lvl == 0) continue;
    std::vector<S> down(t.size() / d, S(0));
    std::vector<int> tup(lvl, 0);
    for (size_t idx = 0; idx < t.size(); ++idx) {
      if (t[idx] != 0) {
        // resolve the flat index into slots once per nonzero entry
        size_t rem = idx;
        for (int s = lvl - 1; s >= 0; --s) {
          tup[s] = int(rem % d);
          rem /= d;
        }
        for (int k = 0; k < lvl; ++k) {
          const int y = tup[k];
          S factor(1);
          for (int j = 0; j < k; ++j) {
            factor *= w.values[tup[j]][y];
            if (factor == 0) break;
          }
          if (factor == 0 || h[y] == 0) continue;
          size_t tgt = 0;
          for (int s = 0; s < lvl; ++s)
            if (s != k) tgt = tgt * d + tup[s];
          down[tgt] += state.measures[y] * h[y] * factor * t[idx];
        }
      }
    }
    auto& acc = out.levels[lvl - 1];
    if (acc.empty())
      acc = std::move(down);
    else
      for (size_t i = 0; i < down.size(); ++i) acc[i] += down[i];
  }
  return out;
}

// Moments of the field operator A(h) = c(h) + c(h)*: the p-th moment is the
// vacuum coefficient of A(h)^p Omega.  Exact for exact scalar types.
template <typename S>
std::vector<S> fock_moments(const step_graphon<S>& w, const std::vector<S>& h, int P) {
  detail::check_grid(w.d, h.size());
  if (P < 1 || P > kMaxFockOrder)
    fail(errc::size_limit, "fock_moments limited to order " + std::to_string(kMaxFockOrder));
  if (detail::pow_ll(w.d, P) > kMaxFockTensorEntries)
    fail(errc::size_limit, "level tensors would exceed " +
                               std::to_string(kMaxFockTensorEntries) + " entries");
  std::vector<S> out;
  fock_state<S> state = fock_state<S>::vacuum(w);
  for (int p = 1; p <= P; ++p) {
    fock_state<S> next = apply_creation(state, h);
    next += apply_annihilation_star(state, h, w);
    // a level can still reach level 0 only if the remaining steps cover it
    next.prune_above(P - p);
    state = std::move(next);
    out.push_back(state.vacuum_coefficient());
  }
  return out;
}

// ---------------------------------------------------------------------------
// twist operators, reduced words, and the Gram operators P^(n)

template <typename S>
struct operator_matrix {
  int dim = 0;
  std::vector<S> a;  // row-major dim x dim

  explicit operator_matrix(int dim_ = 0) : dim(dim_), a(size_t(dim_) * dim_, S(0)) {}
  S& at(int r, int c) { return a[size_t(r) * dim + c]; }
  const S& at(int r, int c) const { return a[size_t(r) * dim + c]; }

  S max_abs_diff(const operator_matrix& o) const {
    S m(0);
    for (size_t i = 0; i < a.size(); ++i) {
      S v = a[i] - o.a[i];
      if (v < 0) v = -v;
      if (v > m) m = v;
    }
    return m;
  }
};

namespace detail {

// One application of T_j (acting on tensor slots j, j+1, zero-based) to a
// scaled basis vector: T_j e_b = w(b_j, b_{j+1}) e_{swap_j(b)}.
template <typename S>
void twist_step(const step_graphon<S>& w, std::vector<int>& tup, S& weight, int j) {
  weight *= w.values[tup[j]][tup[j + 1]];
  std::swap(tup[j], tup[j + 1]);
}

inline std::vector<int> flat_to_tuple(size_t idx, int n, int d) {
  std::vector<int> tup(n);
  for (int s = n - 1; s >= 0; --s) {
    tup[s] = int(idx % d);
    idx /= d;
  }
  return tup;
}

inline size_t tuple_to_flat(const std::vector<int>& tup, int d) {
  size_t idx = 0;
  for (int v : tup) idx = idx * d + v;
  return idx;
}

}  // namespace detail

// Reduced word for a permutation (one-line, zero-based), as adjacent
// transposition indices: repeatedly removes the smallest descent, so
// perm = s_{j_m} ... s_{j_1} for the returned word (j_1, ..., j_m), with
// m = the inversion count.
inline std::vector<int> reduced_word(std::vector<int> perm) {
  const int n = int(perm.size());
  std::vector<int> check = perm;
  std::sort(check.begin(), check.end());
  for (int i = 0; i < n; ++i)
    if (check[i] != i) fail(errc::range_violation, "not a permutation of 0..n-1");
  std::vector<int> word;
  while (true) {
    int j = -1;
    for (int i = 0; i + 1 < n; ++i)
      if (perm[i] > perm[i + 1]) {
        j = i;
        break;
      }
    if (j < 0) break;
    std::swap(perm[j], perm[j + 1]);
    word.push_back(j);
  }
  return word;
}

// The operator T_{j_m} ... T_{j_1} on the n-fold tensor power, for the word
// (j_1, ..., j_m) applied left to right.  For a reduced word of sigma this is
// phi(sigma); well-definedness across different reduced words of the same
// permutation is a consequence of the Yang-Baxter relation.
template <typename S>
operator_matrix<S> phi_of_word(const step_graphon<S>& w, int n, const std::vector<int>& word) {
  for (int j : word)
    if (j < 0 || j + 1 >= n) fail(errc::index_out_of_range, "transposition index out of range");
  const int dim = int(detail::pow_ll(w.d, n));
  operator_matrix<S> out(dim);
  for (int c = 0; c < dim; ++c) {
    std::vector<int> tup = detail::flat_to_tuple(size_t(c), n, w.d);
    S weight(1);
    for (int j : word) {
      detail::twist_step(w, tup, weight, j);
      if (weight == 0) break;
    }
    if (weight != 0) out.at(int(detail::tuple_to_flat(tup, w.d)), c) += weight;
  }
  return out;
}

// P^(n) = sum over S_n of phi(sigma), the Gram operator of the twisted inner
// product on the n-th tensor level.
template <typename S>
operator_matrix<S> gram_matrix_P(const step_graphon<S>& w, int n) {
  if (n < 1 || n > kMaxGramLevel)
    fail(errc::size_limit, "gram_matrix_P limited to level " + std::to_string(kMaxGramLevel));
  if (w.d > kMaxGramCells)
    fail(errc::size_limit, "gram_matrix_P limited to " + std::to_string(kMaxGramCells) +
                               " cells");
  const int dim = int(detail::pow_ll(w.d, n));
  operator_matrix<S> out(dim);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const std::vector<int> word = reduced_word(perm);
    for (int c = 0; c < dim; ++c) {
      std::vector<int> tup = detail::flat_to_tuple(size_t(c), n, w.d);
      S weight(1);
      for (int j : word) {
        detail::twist_step(w, tup, weight, j);
        if (weight == 0) break;
      }
      if (weight != 0) out.at(int(detail::tuple_to_flat(tup, w.d)), c) += weight;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Minimum eigenvalue of P^(n); must be >= -1e-10 always (the kernel may be
// nonempty when max |w| = 1, but genuine negativity would signal a bug).
template <typename S>
double gram_min_eigenvalue(const step_graphon<S>& w, int n) {
  operator_matrix<S> P = gram_matrix_P(w, n);
  std::vector<double> flat(P.a.size());
  for (size_t i = 0; i < flat.size(); ++i) flat[i] = to_double(P.a[i]);
  return min_symmetric_eigenvalue(flat, P.dim);
}

// Twisted inner product <xi, P^(n) eta> of two level-n tensors, with the
// ambient pairing weighted by cell measures.
template <typename S>
S twisted_inner_product(const step_graphon<S>& w, const std::vector<S>& xi,
                        const std::vector<S>& eta, int n) {
  operator_matrix<S> P = gram_matrix_P(w, n);
  if (int(xi.size()) != P.dim || int(eta.size()) != P.dim)
    fail(errc::dimension_mismatch, "tensor sizes do not match level " + std::to_string(n));
  const std::vector<S> lam = w.measures();
  S tot(0);
  for (int r = 0; r < P.dim; ++r) {
    if (xi[r] == 0) continue;
    S row(0);
    for (int c = 0; c < P.dim; ++c)
      if (P.at(r, c) != 0 && eta[c] != 0) row += P.at(r, c) * eta[c];
    if (row == 0) continue;
    S cellw(1);
    for (int v : detail::flat_to_tuple(size_t(r), n, w.d)) cellw *= lam[v];
    tot += xi[r] * row * cellw;
  }
  return tot;
}

// Max-entry residual of the braid relation
//   (id (x) T_w)(T_w (x) id)(id (x) T_w) = (T_w (x) id)(id (x) T_w)(T_w (x) id)
// on the third tensor level; identically zero, so any nonzero in exact mode
// (or beyond roundoff in float mode) is an implementation fault.
template <typename S>
S yang_baxter_check(const step_graphon<S>& w) {
  operator_matrix<S> lhs = phi_of_word(w, 3, {1, 0, 1});
  operator_matrix<S> rhs = phi_of_word(w, 3, {0, 1, 0});
  return lhs.max_abs_diff(rhs);
}

}  // namespace gclt
