#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gclt/errors.hpp"
#include "gclt/graphs.hpp"
#include "gclt/scalar.hpp"

namespace gclt {

inline constexpr int kMaxPartitionGround = 12;   // Bell numbers grow fast
inline constexpr int kMaxPairingGround = 16;
inline constexpr int kMaxEpsWordLen = 10;
inline constexpr int kMaxTransformLen = 16;

// Set partition of {1..p}.  Blocks are sorted internally and ordered by their
// least element; that order also labels the vertices of the crossing graph.
struct set_partition {
  int p = 0;
  std::vector<std::vector<int>> blocks;

  int block_count() const { return int(blocks.size()); }

  // element (1-based) -> block id (0-based)
  std::vector<int> block_index() const {
    std::vector<int> idx(p + 1, -1);
    for (int b = 0; b < block_count(); ++b)
      for (int e : blocks[b]) idx[e] = b;
    return idx;
  }

  bool is_pairing() const {
    for (const auto& b : blocks)
      if (b.size() != 2) return false;
    return 2 * block_count() == p;
  }

  bool operator==(const set_partition& o) const { return p == o.p && blocks == o.blocks; }

  std::string str() const {
    std::string s;
    for (const auto& b : blocks) {
      s += "{";
      for (size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
      s += "}";
    }
    return s;
  }
};

namespace detail {
inline set_partition partition_from_rgs(const std::vector<int>& a) {
  set_partition out;
  out.p = int(a.size());
  int m = 0;
  for (int x : a) m = std::max(m, x + 1);
  out.blocks.assign(m, {});
  for (int i = 0; i < out.p; ++i) out.blocks[a[i]].push_back(i + 1);
  return out;
}
}  // namespace detail

// All set partitions of {1..p} in restricted-growth-string order.
inline std::vector<set_partition> enumerate_partitions(int p) {
  if (p < 1) fail(errc::size_limit, "ground set must be nonempty");
  if (p > kMaxPartitionGround)
    fail(errc::size_limit, "enumerate_partitions limited to p <= " +
                               std::to_string(kMaxPartitionGround));
  std::vector<set_partition> out;
  std::vector<int> a(p, 0), mx(p, 0);
  while (true) {
    out.push_back(detail::partition_from_rgs(a));
    int i = p - 1;
    while (i >= 1 && a[i] > mx[i - 1]) --i;
    if (i < 1) break;
    ++a[i];
    mx[i] = std::max(mx[i - 1], a[i]);
    for (int j = i + 1; j < p; ++j) {
      a[j] = 0;
      mx[j] = mx[j - 1];
    }
  }
  return out;
}

namespace detail {
inline void pairings_rec(std::vector<int>& avail, std::vector<std::vector<int>>& cur,
                         std::vector<set_partition>& out, int p) {
  if (avail.empty()) {
    out.push_back(set_partition{p, cur});
    return;
  }
  int a = avail.front();
  for (size_t k = 1; k < avail.size(); ++k) {
    int b = avail[k];
    std::vector<int> rest;
    rest.reserve(avail.size() - 2);
    for (size_t j = 1; j < avail.size(); ++j)
      if (j != k) rest.push_back(avail[j]);
    cur.push_back({a, b});
    pairings_rec(rest, cur, out, p);
    cur.pop_back();
  }
}
}  // namespace detail

// Pair partitions of {1..p}: (p-1)!! of them for even p, none for odd p.
// Deterministic order: the least unpaired element takes each larger partner
// in increasing order.
inline std::vector<set_partition> enumerate_pair_partitions(int p) {
  if (p < 0 || p > kMaxPairingGround)
    fail(errc::size_limit, "enumerate_pair_partitions limited to p <= " +
                               std::to_string(kMaxPairingGround));
  if (p % 2 != 0) return {};
  if (p == 0) return {set_partition{0, {}}};
  std::vector<int> avail(p);
  for (int i = 0; i < p; ++i) avail[i] = i + 1;
  std::vector<set_partition> out;
  std::vector<std::vector<int>> cur;
  detail::pairings_rec(avail, cur, out, p);
  return out;
}

// ker(word): positions grouped by equal letters, blocks by least element.
inline set_partition kernel_of(const std::vector<int>& word) {
  set_partition out;
  out.p = int(word.size());
  std::vector<int> seen;  // letter of block b
  for (int i = 0; i < out.p; ++i) {
    int b = -1;
    for (size_t j = 0; j < seen.size(); ++j)
      if (seen[j] == word[i]) b = int(j);
    if (b < 0) {
      seen.push_back(word[i]);
      out.blocks.emplace_back();
      b = int(seen.size()) - 1;
    }
    out.blocks[b].push_back(i + 1);
  }
  return out;
}

// Two disjoint sorted blocks cross iff their merged label sequence has at
// least four runs, i.e. contains an alternating pattern a < b < a' < b'.
inline bool blocks_cross(const std::vector<int>& A, const std::vector<int>& B) {
  size_t i = 0, j = 0;
  int runs = 0, last = -1;
  while (i < A.size() || j < B.size()) {
    int lab;
    if (i >= A.size())
      lab = 1;
    else if (j >= B.size())
      lab = 0;
    else
      lab = A[i] < B[j] ? 0 : 1;
    if (lab == 0)
      ++i;
    else
      ++j;
    if (lab != last) {
      ++runs;
      last = lab;
    }
  }
  return runs >= 4;
}

// Crossing graph f_pi: one vertex per block (least-element order), an edge
// between every pair of crossing blocks.
inline simple_graph intersection_graph(const set_partition& pi) {
  const int m = pi.block_count();
  simple_graph g = simple_graph::edgeless(m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (blocks_cross(pi.blocks[a], pi.blocks[b])) g.edges.insert({a + 1, b + 1});
  return g;
}

inline int crossing_count(const set_partition& pi) {
  int c = 0;
  const int m = pi.block_count();
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (blocks_cross(pi.blocks[a], pi.blocks[b])) ++c;
  return c;
}

inline bool is_noncrossing(const set_partition& pi) { return crossing_count(pi) == 0; }

// Pair partitions whose crossing graph is connected; these carry the free
// cumulants of the limit laws.
inline std::vector<set_partition> connected_pair_partitions(int p) {
  std::vector<set_partition> out;
  for (auto& pi : enumerate_pair_partitions(p))
    if (is_connected(intersection_graph(pi))) out.push_back(pi);
  return out;
}

// pi <= ker(word): the word is constant on every block.
inline bool refines_kernel(const set_partition& pi, const std::vector<int>& word) {
  for (const auto& b : pi.blocks) {
    for (size_t i = 1; i < b.size(); ++i)
      if (word[b[i] - 1] != word[b[0] - 1]) return false;
  }
  return true;
}

// Membership in NC(g, word): pi <= ker(word), and whenever two blocks cross
// their letters must be adjacent in g.  Crossing blocks with equal letters
// would need a loop, so they always disqualify.
inline bool is_eps_noncrossing(const set_partition& pi, const simple_graph& g,
                               const std::vector<int>& word) {
  if (int(word.size()) != pi.p)
    fail(errc::dimension_mismatch, "word length " + std::to_string(word.size()) +
                                       " != partition ground set " + std::to_string(pi.p));
  for (int x : word)
    if (x < 1 || x > g.n)
      fail(errc::index_out_of_range, "word letter " + std::to_string(x) + " outside 1.." +
                                         std::to_string(g.n));
  if (!refines_kernel(pi, word)) return false;
  const int m = pi.block_count();
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      if (!blocks_cross(pi.blocks[a], pi.blocks[b])) continue;
      int va = word[pi.blocks[a][0] - 1], vb = word[pi.blocks[b][0] - 1];
      if (va == vb || !g.has_edge(va, vb)) return false;
    }
  return true;
}

inline std::vector<set_partition> enumerate_eps_noncrossing(const simple_graph& g,
                                                            const std::vector<int>& word) {
  const int p = int(word.size());
  if (p > kMaxEpsWordLen)
    fail(errc::size_limit,
         "enumerate_eps_noncrossing limited to words of length <= " +
             std::to_string(kMaxEpsWordLen));
  std::vector<set_partition> out;
  for (auto& pi : enumerate_partitions(p))
    if (is_eps_noncrossing(pi, g, word)) out.push_back(pi);
  return out;
}

namespace detail {
// Sum over compositions of s into k nonnegative parts of prod m_{part},
// with m[0] = 1 and m[j] the j-th moment.  Used by the noncrossing
// moment-cumulant recursion (decompose by the block containing 1).
template <class S>
S composition_sum(const std::vector<S>& m, int k, int s) {
  std::vector<S> cur(s + 1, S(0)), next(s + 1, S(0));
  cur[0] = S(1);
  for (int step = 0; step < k; ++step) {
    for (int t = 0; t <= s; ++t) next[t] = S(0);
    for (int t = 0; t <= s; ++t) {
      if (cur[t] == S(0)) continue;
      for (int j = 0; t + j <= s; ++j) next[t + j] += cur[t] * m[j];
    }
    std::swap(cur, next);
  }
  return cur[s];
}

inline void check_transform_len(size_t len) {
  if (len > size_t(kMaxTransformLen))
    fail(errc::size_limit, "moment-cumulant transform limited to order <= " +
                               std::to_string(kMaxTransformLen));
}
}  // namespace detail

// m_p = sum over noncrossing partitions sigma of prod_{V in sigma} kappa_{|V|}.
// Input and output are indexed from order 1.
template <class S>
std::vector<S> free_cumulants_to_moments(const std::vector<S>& kappa) {
  detail::check_transform_len(kappa.size());
  const int P = int(kappa.size());
  std::vector<S> m(P + 1, S(0));
  m[0] = S(1);
  for (int p = 1; p <= P; ++p) {
    S tot(0);
    for (int k = 1; k <= p; ++k) tot += kappa[k - 1] * detail::composition_sum(m, k, p - k);
    m[p] = tot;
  }
  return std::vector<S>(m.begin() + 1, m.end());
}

template <class S>
std::vector<S> moments_to_free_cumulants(const std::vector<S>& moments) {
  detail::check_transform_len(moments.size());
  const int P = int(moments.size());
  std::vector<S> m(P + 1, S(0));
  m[0] = S(1);
  for (int p = 1; p <= P; ++p) m[p] = moments[p - 1];
  std::vector<S> kappa(P, S(0));
  for (int p = 1; p <= P; ++p) {
    S rest(0);
    for (int k = 1; k < p; ++k) rest += kappa[k - 1] * detail::composition_sum(m, k, p - k);
    kappa[p - 1] = m[p] - rest;
  }
  return kappa;
}

}  // namespace gclt
