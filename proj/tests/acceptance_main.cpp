// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Each check is exact (rational) unless the criterion itself is statistical.
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "gclt/gclt.hpp"
#include "oracles.hpp"

using namespace gclt;

namespace {

int failures = 0;

// A criterion returns "" on success, or a short failure detail.
void run(int idx, const std::string& name, double limit_s,
         const std::function<std::string()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  try {
    detail = fn();
  } catch (const std::exception& e) {
    detail = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (detail.empty() && limit_s > 0 && secs > limit_s)
    detail = "exceeded " + std::to_string(limit_s) + " s budget";
  const bool ok = detail.empty();
  if (!ok) ++failures;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", secs);
  std::cout << (ok ? "PASS" : "FAIL") << "  " << std::setw(2) << idx << "  " << name << "  ("
            << buf << ")" << (ok ? "" : "  -- " + detail) << std::endl;
}

std::string semicircle_criterion() {
  const auto m = mu_w_moments(constant_graphon<rat>(rat(0)), 12);
  const long long cat[] = {1, 2, 5, 14, 42, 132};
  for (int p = 1; p <= 6; ++p) {
    if (m[2 * p - 1] != cat[p - 1]) return "even moment " + std::to_string(2 * p) + " wrong";
    if (m[2 * p - 2] != 0) return "odd moment nonzero";
  }
  return "";
}

std::string gaussian_criterion() {
  const auto m = mu_w_moments(constant_graphon<rat>(rat(1)), 10);
  const long long dfac[] = {1, 3, 15, 105, 945};
  for (int p = 1; p <= 5; ++p) {
    if (m[2 * p - 1] != dfac[p - 1]) return "even moment " + std::to_string(2 * p) + " wrong";
    if (m[2 * p - 2] != 0) return "odd moment nonzero";
  }
  return "";
}

std::string q_gaussian_criterion() {
  for (const rat& q : {rat(1, 2), rat(-1, 2)}) {
    const auto m = mu_w_moments(constant_graphon<rat>(q), 10);
    for (int p = 1; p <= 5; ++p) {
      rat expect(0);
      for (const auto& pi : oracle::all_pairings(2 * p))
        expect += scalar_pow(q, oracle::crossing_pairs_quadruple(pi));
      if (m[2 * p - 1] != expect)
        return "crossing histogram mismatch at order " + std::to_string(2 * p);
      if (m[2 * p - 2] != 0) return "odd moment nonzero";
    }
  }
  return "";
}

std::string support_bound_criterion() {
  const auto s0 = support_bound(constant_graphon<rat>(rat(0)));
  if (!s0.bounded || s0.radius_sq != 4 || s0.radius != 2.0) return "q=0 bound is not [-2,2]";
  const auto sh = support_bound(constant_graphon<rat>(rat(1, 2)));
  if (!sh.bounded || sh.radius_sq != 8) return "q=1/2 squared radius is not 8";
  if (std::abs(sh.radius - 2.0 * std::sqrt(2.0)) > 1e-14) return "q=1/2 radius is not 2*sqrt(2)";

  oracle::rng r(104);
  for (int iter = 0; iter < 20; ++iter) {
    const auto w = oracle::random_step_graphon(r, 3, true);
    const auto m = mu_w_moments(w, 10);
    const auto dom = q_gaussian_moments(w.sup_value(), 10);
    for (int p = 2; p <= 10; p += 2)
      if (m[p - 1] > dom[p - 1]) return "moment domination violated at order " + std::to_string(p);
  }
  return "";
}

std::string fock_criterion() {
  oracle::rng r(105);
  for (int iter = 0; iter < 10; ++iter) {
    const auto w = oracle::random_step_graphon(r, 3, true);
    const std::vector<rat> ones(w.d, rat(1));
    if (fock_moments(w, ones, 8) != mu_w_moments(w, 8, ones))
      return "fock and pairing moments differ (unit weights)";
    if (iter < 3) {
      const auto h = oracle::random_h(r, w.d);
      if (fock_moments(w, h, 8) != mu_w_moments(w, 8, h))
        return "fock and pairing moments differ (random weights)";
    }
  }
  return "";
}

std::string positivity_criterion() {
  oracle::rng r(106);
  for (int iter = 0; iter < 10; ++iter) {
    const auto w = oracle::random_step_graphon(r, 3, true);
    if (yang_baxter_check(w) != 0) return "nonzero yang-baxter residual";
    for (int n = 1; n <= 4; ++n)
      if (gram_min_eigenvalue(w, n) < -1e-10)
        return "negative gram eigenvalue at level " + std::to_string(n);
  }
  return "";
}

std::string finite_exactness_criterion() {
  const auto sc = base_law::semicircle(8);
  for (int n = 2; n <= 8; ++n) {
    const auto m = finite_sum_moment(simple_graph::complete(n), sc, 4);
    if (!m.exact || m.exact_value != rat(3) - rat(1, n))
      return "complete graph fourth moment is not 3 - 1/n at n = " + std::to_string(n);
  }
  for (int n = 1; n <= 6; ++n)
    for (int p = 1; p <= 8; ++p) {
      const auto m = finite_sum_moment(simple_graph::edgeless(n), sc, p);
      const rat expect = p % 2 ? rat(0) : rat(catalan(p / 2));
      if (!m.exact || m.exact_value != expect)
        return "edgeless moment differs from catalan at n = " + std::to_string(n);
    }
  return "";
}

std::string mixed_q_criterion() {
  oracle::rng r(108);
  for (int iter = 0; iter < 10; ++iter) {
    const int n = r.uniform(1, 5);
    std::vector<std::vector<rat>> q(n, std::vector<rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) q[i][j] = q[j][i] = r.rational(5, -1, 1);
    const auto Q = make_mixed_q_matrix(q);
    for (int p = 1; p <= 6; ++p)
      if (mixed_q_sum_moment(Q, p) != mixed_q_sum_moment_definitional(Q, p))
        return "routes differ at order " + std::to_string(p);
  }
  return "";
}

std::string convolution_criterion() {
  oracle::rng r(109);
  for (const rat& lambda : {rat(1, 4), rat(1, 2)}) {
    for (int iter = 0; iter < 3; ++iter) {
      const auto a = oracle::random_step_graphon(r, 2, true);
      const auto b = oracle::random_step_graphon(r, 2, true);
      const auto ma = mu_w_moments(a, 8);
      const auto mb = mu_w_moments(b, 8);

      const auto cc = convolution_graphon(a, b, lambda, conv_kind::classical);
      const auto mc = mu_w_moments(cc, 8);
      for (int p = 1; p <= 8; ++p)
        if (mc[p - 1] != oracle::classical_convolution_moment(ma, mb, lambda, p))
          return "classical kind differs from the binomial oracle";

      const auto fc = convolution_graphon(a, b, lambda, conv_kind::free);
      const auto kc = mu_w_free_cumulants(fc, 8);
      const auto ka = mu_w_free_cumulants(a, 8);
      const auto kb = mu_w_free_cumulants(b, 8);
      for (int p = 2; p <= 8; p += 2)
        if (kc[p - 1] != scalar_pow(lambda, p / 2) * ka[p - 1] +
                             scalar_pow(rat(1) - lambda, p / 2) * kb[p - 1])
          return "free kind breaks cumulant additivity";
    }
  }
  return "";
}

std::string negative_graphon_criterion() {
  const auto rad = mu_w_moments(constant_graphon<rat>(rat(-1)), 10);
  for (int p = 1; p <= 5; ++p)
    if (rad[2 * p - 1] != 1 || rad[2 * p - 2] != 0) return "w = -1 moments are not 0,1,0,1,...";

  const auto arc = mu_w_moments(arcsine_graphon<rat>(), 10);
  for (int p = 1; p <= 5; ++p)
    if (arc[2 * p - 1] != rat(binomial(2 * p, p)) / rat(bigint(1) << p))
      return "arcsine moments differ from binom(2p,p)/2^p";

  // d = 2 block: cumulant additivity gives kappa = 2 * (1/2)^{p/2} * kappa_rad
  const auto km2 = make_step_graphon<rat>({{rat(-1), rat(0)}, {rat(0), rat(-1)}});
  const auto krad = mu_w_free_cumulants(constant_graphon<rat>(rat(-1)), 10);
  std::vector<rat> k2(10, rat(0));
  for (int p = 2; p <= 10; p += 2) k2[p - 1] = rat(2) * scalar_pow(rat(1, 2), p / 2) * krad[p - 1];
  if (mu_w_moments(km2, 10) != free_cumulants_to_moments(k2))
    return "kesten-mckay moments differ from the dilated free square";
  return "";
}

std::string multivariate_criterion() {
  for (const rat& qval : {rat(0), rat(1, 2)}) {
    const auto w = constant_graphon<rat>(qval);
    const auto law = base_law::from_moments("mu_w", mu_w_moments(w, 6));
    for (const auto& gL : {simple_graph::complete(2), simple_graph::edgeless(2)}) {
      const auto W = decorated_limit_of_lex(gL, w);
      for (int len = 1; len <= 6; ++len) {
        std::vector<int> word(len, 1);
        while (true) {
          if (multivariate_moment(W, word) != tau_word(gL, word, law))
            return "joint moment differs from the layer-graph word state";
          int i = len - 1;
          while (i >= 0 && word[i] == gL.n) word[i--] = 1;
          if (i < 0) break;
          ++word[i];
        }
      }
    }
  }
  return "";
}

std::string weighted_criterion() {
  oracle::rng r(112);
  for (int iter = 0; iter < 50; ++iter) {
    const auto gw = oracle::random_weighted_graph(r, 5);
    const auto f = oracle::random_graph(r, 4);
    const auto res = hom_counts(f, gw);
    if (res.rho != hom_density(f, weighted_graphon(gw)))
      return "weighted-graph density differs from its graphon density";
    if (abs(res.rho - res.rho_inj) > res.bound) return "hom/inj gap bound violated";
  }
  return "";
}

std::string sampling_criterion() {
  const auto w = constant_graphon<rat>(rat(1, 2));
  const auto law =
      base_law::from_moments("m4=5/2", {rat(0), rat(1), rat(0), rat(5, 2)});
  const int seeds = 32;
  std::vector<double> vals;
  for (int seed = 1; seed <= seeds; ++seed) {
    const auto g = sample_w_random_graph(w, 64, std::uint64_t(seed));
    vals.push_back(finite_sum_moment(g, law, 4).value);
  }
  double mean = 0;
  for (double v : vals) mean += v;
  mean /= seeds;
  double var = 0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= seeds - 1;
  const double se = std::sqrt(var / seeds);
  if (std::abs(mean - 2.5) > 4 * se) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "mean %.5f, se %.5f, target 2.5", mean, se);
    return buf;
  }
  return "";
}

}  // namespace

int main() {
  run(1, "semicircle law from the zero kernel", 5, semicircle_criterion);
  run(2, "gaussian law from the all-ones kernel", 5, gaussian_criterion);
  run(3, "q-gaussian laws match the crossing histogram", 10, q_gaussian_criterion);
  run(4, "support bounds and moment domination", 0, support_bound_criterion);
  run(5, "fock moments equal pairing moments", 60, fock_criterion);
  run(6, "braid relation and gram positivity", 0, positivity_criterion);
  run(7, "finite sums are exact on complete and edgeless graphs", 0, finite_exactness_criterion);
  run(8, "mixed-q routes agree", 0, mixed_q_criterion);
  run(9, "convolution kernels close both kinds", 0, convolution_criterion);
  run(10, "negative-kernel laws", 0, negative_graphon_criterion);
  run(11, "joint moments match the layer-graph word states", 0, multivariate_criterion);
  run(12, "weighted-graph densities and the gap bound", 0, weighted_criterion);
  run(13, "sampled fourth moments concentrate at 5/2", 0, sampling_criterion);
  return failures ? 1 : 0;
}
