#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gclt/errors.hpp"
#include "gclt/graphs.hpp"
#include "gclt/graphons.hpp"
#include "gclt/limit_law.hpp"
#include "gclt/partitions.hpp"
#include "gclt/scalar.hpp"

namespace gclt {

inline constexpr long long kMaxWordSum = 20'000'000;
inline constexpr long long kMaxMixedQWordSum = 1'000'000;

// Common distribution of the independent variables before scaling: centered,
// variance one, with free cumulants cached for the word calculus.
struct base_law {
  std::string name;
  std::vector<rat> moments;         // m_1 .. m_P
  std::vector<rat> free_cumulants;  // kappa_1 .. kappa_P

  int order() const { return int(moments.size()); }

  static base_law from_moments(std::string name, std::vector<rat> m) {
    if (m.size() < 2) fail(errc::dimension_mismatch, "need moments at least through order 2");
    if (m[0] != 0) fail(errc::range_violation, "base law must be centered (m_1 = 0)");
    if (m[1] != 1) fail(errc::range_violation, "base law must have unit variance (m_2 = 1)");
    // positivity diagnostic: the moments must at least form a PSD Hankel form
    // (necessary for a genuine law; realizability beyond that is assumed)
    if (hankel_min_eigenvalue(m, int(m.size()) / 2) < -1e-9)
      fail(errc::positivity_violation, "moment sequence has a negative Hankel form");
    base_law out;
    out.name = std::move(name);
    out.free_cumulants = moments_to_free_cumulants(m);
    out.moments = std::move(m);
    return out;
  }

  static base_law semicircle(int P) {
    std::vector<rat> m(P, rat(0));
    for (int p = 2; p <= P; p += 2) m[p - 1] = rat(catalan(p / 2));
    return from_moments("semicircle", std::move(m));
  }

  static base_law gaussian(int P) {
    std::vector<rat> m(P, rat(0));
    for (int p = 2; p <= P; p += 2) m[p - 1] = rat(odd_double_factorial(p / 2));
    return from_moments("gaussian", std::move(m));
  }

  static base_law rademacher(int P) {
    std::vector<rat> m(P, rat(0));
    for (int p = 2; p <= P; p += 2) m[p - 1] = 1;
    return from_moments("rademacher", std::move(m));
  }
};

// Word state tau(a_{i_1} ... a_{i_p}) for variables that are eps-independent
// along g and share the base law: sum over NC(g, word) of the block-wise free
// cumulants.  Centering kills every partition with a singleton block.
inline rat tau_word(const simple_graph& g, const std::vector<int>& word, const base_law& law) {
  if (int(word.size()) > law.order())
    fail(errc::size_limit, "law provides moments only through order " +
                               std::to_string(law.order()));
  rat tot(0);
  for (const auto& pi : enumerate_eps_noncrossing(g, word)) {
    rat term(1);
    for (const auto& b : pi.blocks) {
      term *= law.free_cumulants[b.size() - 1];
      if (term == 0) break;
    }
    tot += term;
  }
  return tot;
}

// Normalized moment of a finite sum; exact whenever the normalizer
// |sigma^2|^(p/2) is rational (even p, or a vanishing sum).
struct finite_moment {
  rat exact_value = 0;
  bool exact = false;
  double value = 0;
};

// tau(S^p) for S = |sigma^2|^{-1/2} * sum_k sigma_k z_k with iid-law z_k that
// are eps-independent along g.  Empty sigma means unit scales.
//
// The n^p word sum is grouped by kernel: tau depends on a word only through
// its kernel classes and the adjacency pattern of its distinct letters, and
// centering kills every kernel with a singleton class, so it suffices to walk
// the partitions of [p] with all classes of size >= 2 and, for each, the
// injective letter assignments (at most n^(p/2) per partition).
inline finite_moment finite_sum_moment(const simple_graph& g, const base_law& law, int p,
                                       const std::vector<rat>& sigma = {}) {
  const int n = g.n;
  if (n < 1) fail(errc::range_violation, "graph must have at least one vertex");
  if (p < 1) fail(errc::range_violation, "moment order must be >= 1");
  if (p > kMaxEpsWordLen)
    fail(errc::size_limit, "finite_sum_moment limited to p <= " +
                               std::to_string(kMaxEpsWordLen));
  double words = 1;
  for (int i = 0; i < p; ++i) words *= n;
  if (words > double(kMaxWordSum))
    fail(errc::size_limit, "word sum n^p exceeds " + std::to_string(kMaxWordSum));
  std::vector<rat> sc = sigma;
  if (sc.empty()) sc.assign(n, rat(1));
  if (int(sc.size()) != n) fail(errc::dimension_mismatch, "need one scale per vertex");
  for (const rat& s : sc)
    if (!(s > 0)) fail(errc::range_violation, "scales must be positive");

  const auto adj = adjacency_bits(g);
  rat sum(0);
  for (const auto& pi : enumerate_partitions(p)) {
    const int k = pi.block_count();
    if (k > n) continue;
    bool has_singleton = false;
    for (const auto& b : pi.blocks) has_singleton |= b.size() < 2;
    if (has_singleton) continue;

    std::map<std::uint64_t, rat> cache;  // adjacency pattern of the letters -> tau
    std::vector<int> word(p);
    std::vector<int> letters(k, 1);  // 1-based vertex per class, odometer
    while (true) {
      bool injective = true;
      for (int a = 0; a < k && injective; ++a)
        for (int b = a + 1; b < k; ++b) injective &= letters[a] != letters[b];
      if (injective) {
        std::uint64_t key = 0;
        for (int a = 0; a < k; ++a)
          for (int b = a + 1; b < k; ++b)
            if (adj[letters[a] - 1] >> (letters[b] - 1) & 1)
              key |= std::uint64_t(1) << (a * k + b);
        auto it = cache.find(key);
        if (it == cache.end()) {
          for (int c = 0; c < k; ++c)
            for (int pos : pi.blocks[c]) word[pos - 1] = letters[c];
          it = cache.emplace(key, tau_word(g, word, law)).first;
        }
        if (it->second != 0) {
          rat wgt(1);
          for (int c = 0; c < k; ++c)
            wgt *= scalar_pow(sc[letters[c] - 1], int(pi.blocks[c].size()));
          sum += wgt * it->second;
        }
      }
      int i = k - 1;
      while (i >= 0 && letters[i] == n) letters[i--] = 1;
      if (i < 0) break;
      ++letters[i];
    }
  }

  rat var_total(0);
  for (const rat& s : sc) var_total += s * s;
  finite_moment out;
  if (p % 2 == 0) {
    out.exact = true;
    out.exact_value = sum / scalar_pow(var_total, p / 2);
    out.value = out.exact_value.convert_to<double>();
  } else if (sum == 0) {
    out.exact = true;
    out.exact_value = 0;
    out.value = 0;
  } else {
    out.exact = false;
    out.value = sum.convert_to<double>() /
                std::pow(var_total.convert_to<double>(), 0.5 * p);
  }
  return out;
}

// tau(S_n^p) for a mixed q-Gaussian family: exactly the pairing sum of hom
// densities of the step graphon with values q_ij, at every finite n.
inline rat mixed_q_sum_moment(const mixed_q_matrix& Q, int p) {
  if (p < 1 || p > kMaxMomentOrder)
    fail(errc::size_limit, "mixed_q_sum_moment limited to p <= " +
                               std::to_string(kMaxMomentOrder));
  if (p % 2 != 0) return 0;
  step_graphon<rat> w = mixed_q_graphon(Q);
  return detail::pairing_hom_sum(enumerate_pair_partitions(p), w, w.measures());
}

// Definitional route for cross-checks: normalized sum of word moments over
// all n^p words.
inline rat mixed_q_sum_moment_definitional(const mixed_q_matrix& Q, int p) {
  if (p < 1 || p > kMaxMomentOrder)
    fail(errc::size_limit, "mixed_q_sum_moment limited to p <= " +
                               std::to_string(kMaxMomentOrder));
  double words = 1;
  for (int i = 0; i < p; ++i) words *= Q.n;
  if (words > double(kMaxMixedQWordSum))
    fail(errc::size_limit, "word sum n^p exceeds " + std::to_string(kMaxMixedQWordSum));
  if (p % 2 != 0) return 0;
  std::vector<int> word(p, 1);
  rat sum(0);
  while (true) {
    sum += mixed_q_word_moment(Q, word);
    int i = p - 1;
    while (i >= 0 && word[i] == Q.n) word[i--] = 1;
    if (i < 0) break;
    ++word[i];
  }
  return sum / scalar_pow(rat(Q.n), p / 2);
}

// ---------------------------------------------------------------------------
// convergence reports

enum class family_kind { complete, edgeless, explicit_graphs, w_random };

struct convergence_family {
  family_kind kind = family_kind::complete;
  std::vector<int> ns;
  std::vector<simple_graph> graphs;  // explicit families
  step_graphon<rat> w;               // limit kernel; sampling source for w_random
  std::uint64_t seed = 1;

  static convergence_family complete_family(std::vector<int> ns) {
    return {family_kind::complete, std::move(ns), {}, constant_graphon<rat>(rat(1)), 0};
  }
  static convergence_family edgeless_family(std::vector<int> ns) {
    return {family_kind::edgeless, std::move(ns), {}, constant_graphon<rat>(rat(0)), 0};
  }
  static convergence_family explicit_family(std::vector<simple_graph> graphs,
                                            step_graphon<rat> w) {
    std::vector<int> ns;
    for (const auto& g : graphs) ns.push_back(g.n);
    return {family_kind::explicit_graphs, std::move(ns), std::move(graphs), std::move(w), 0};
  }
  // graph for size n is sampled with seed (base seed + n)
  static convergence_family w_random_family(step_graphon<rat> w, std::vector<int> ns,
                                            std::uint64_t seed) {
    return {family_kind::w_random, std::move(ns), {}, std::move(w), seed};
  }

  simple_graph graph_at(size_t idx) const {
    int n = ns[idx];
    switch (kind) {
      case family_kind::complete: return simple_graph::complete(n);
      case family_kind::edgeless: return simple_graph::edgeless(n);
      case family_kind::explicit_graphs: return graphs[idx];
      case family_kind::w_random: return sample_w_random_graph(w, n, seed + std::uint64_t(n));
    }
    fail(errc::range_violation, "unknown family kind");
  }

  const char* kind_name() const {
    switch (kind) {
      case family_kind::complete: return "complete";
      case family_kind::edgeless: return "edgeless";
      case family_kind::explicit_graphs: return "explicit";
      case family_kind::w_random: return "w-random";
    }
    return "?";
  }
};

struct convergence_row {
  int n = 0;
  int p = 0;
  finite_moment finite;
  rat limit = 0;
  bool gap_exact = false;
  rat gap_exact_value = 0;
  double gap = 0;
};

struct convergence_table {
  std::string family;
  std::string law;
  int p_max = 0;
  std::vector<convergence_row> rows;
  std::vector<std::pair<int, bool>> gap_monotone;  // per order p: nonincreasing in n

  void write_csv(std::ostream& os) const {
    os << "n,p,finite,finite_decimal,limit,limit_decimal,gap,gap_decimal,exact\n";
    for (const auto& r : rows) {
      os << r.n << "," << r.p << ",";
      os << (r.finite.exact ? format_rat(r.finite.exact_value) : "") << ","
         << format_double(r.finite.value) << ",";
      os << format_rat(r.limit) << "," << format_double(r.limit.convert_to<double>()) << ",";
      os << (r.gap_exact ? format_rat(r.gap_exact_value) : "") << "," << format_double(r.gap)
         << ",";
      os << (r.finite.exact ? "1" : "0") << "\n";
    }
  }
};

inline convergence_table convergence_report(const convergence_family& fam, const base_law& law,
                                            int p_max) {
  if (p_max < 1 || p_max > kMaxEpsWordLen)
    fail(errc::size_limit, "convergence report limited to p <= " +
                               std::to_string(kMaxEpsWordLen));
  if (law.order() < p_max) fail(errc::size_limit, "law provides too few moments");
  convergence_table out;
  out.family = fam.kind_name();
  out.law = law.name;
  out.p_max = p_max;
  std::vector<rat> limit = mu_w_moments(fam.w, p_max);
  for (size_t i = 0; i < fam.ns.size(); ++i) {
    simple_graph g = fam.graph_at(i);
    for (int p = 1; p <= p_max; ++p) {
      convergence_row row;
      row.n = fam.ns[i];
      row.p = p;
      row.finite = finite_sum_moment(g, law, p);
      row.limit = limit[p - 1];
      if (row.finite.exact) {
        row.gap_exact = true;
        row.gap_exact_value = row.finite.exact_value - row.limit;
        if (row.gap_exact_value < 0) row.gap_exact_value = -row.gap_exact_value;
        row.gap = row.gap_exact_value.convert_to<double>();
      } else {
        row.gap = std::abs(row.finite.value - row.limit.convert_to<double>());
      }
      out.rows.push_back(row);
    }
  }
  for (int p = 1; p <= p_max; ++p) {
    bool mono = true;
    double prev = -1;
    bool first = true;
    for (const auto& r : out.rows)
      if (r.p == p) {
        if (!first && r.gap > prev + 1e-15) mono = false;
        prev = r.gap;
        first = false;
      }
    out.gap_monotone.push_back({p, mono});
  }
  return out;
}

}  // namespace gclt
