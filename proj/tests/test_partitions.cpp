#include <algorithm>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "gclt/gclt.hpp"
#include "oracles.hpp"

using namespace gclt;

namespace {
std::set<std::string> partition_keys(const std::vector<set_partition>& ps) {
  std::set<std::string> out;
  for (const auto& pi : ps) out.insert(pi.str());
  return out;
}
}  // namespace

TEST_CASE("enumerate_partitions matches direct recursion") {
  for (int p = 1; p <= 7; ++p) {
    const auto lib = enumerate_partitions(p);
    const auto ref = oracle::all_partitions(p);
    REQUIRE(lib.size() == ref.size());
    REQUIRE(partition_keys(lib) == partition_keys(ref));
  }
  REQUIRE(enumerate_partitions(1).size() == 1);
  REQUIRE(enumerate_partitions(3).size() == 5);
  REQUIRE_THROWS_AS(enumerate_partitions(13), error);
  try {
    enumerate_partitions(13);
  } catch (const error& e) {
    REQUIRE(e.code() == errc::size_limit);
  }
}

TEST_CASE("enumerate_pair_partitions counts and membership") {
  REQUIRE(enumerate_pair_partitions(2).size() == 1);
  REQUIRE(enumerate_pair_partitions(2)[0].str() == "{1,2}");
  REQUIRE(enumerate_pair_partitions(5).empty());
  REQUIRE(enumerate_pair_partitions(6).size() == 15);
  for (int p = 2; p <= 12; p += 2) {
    const auto lib = enumerate_pair_partitions(p);
    REQUIRE(bigint(lib.size()) == odd_double_factorial(p / 2));
    if (p <= 8) REQUIRE(partition_keys(lib) == partition_keys(oracle::all_pairings(p)));
  }
}

TEST_CASE("kernel_of") {
  REQUIRE(kernel_of({1, 2, 1}).str() == "{1,3}{2}");
  REQUIRE(kernel_of({1, 2, 1, 2}).str() == "{1,3}{2,4}");
  REQUIRE(kernel_of({7, 7, 7}).str() == "{1,2,3}");
}

TEST_CASE("crossing structure matches the quadruple oracle") {
  for (int p = 1; p <= 6; ++p) {
    for (const auto& pi : enumerate_partitions(p)) {
      REQUIRE(crossing_count(pi) == oracle::crossing_pairs_quadruple(pi));
      const auto f = intersection_graph(pi);
      REQUIRE(f.n == pi.block_count());
      REQUIRE(int(f.edges.size()) == crossing_count(pi));
      if (is_noncrossing(pi)) REQUIRE(f.edges.empty());
    }
  }
}

TEST_CASE("intersection_graph frozen examples") {
  set_partition nested{4, {{1, 4}, {2, 3}}};
  REQUIRE(intersection_graph(nested).edges.empty());

  set_partition crossing{4, {{1, 3}, {2, 4}}};
  const auto f2 = intersection_graph(crossing);
  REQUIRE(f2.n == 2);
  REQUIRE(f2.edges == std::set<std::pair<int, int>>{{1, 2}});

  set_partition chain{6, {{1, 3}, {2, 5}, {4, 6}}};
  const auto f3 = intersection_graph(chain);
  REQUIRE(f3.n == 3);
  REQUIRE(f3.edges == std::set<std::pair<int, int>>{{1, 2}, {2, 3}});
  REQUIRE(f3 == simple_graph::path(3));
}

TEST_CASE("noncrossing pairings have Catalan cardinality") {
  for (int p = 1; p <= 6; ++p) {
    int count = 0;
    for (const auto& pi : enumerate_pair_partitions(2 * p))
      if (is_noncrossing(pi)) ++count;
    REQUIRE(bigint(count) == catalan(p));
  }
}

TEST_CASE("connected_pair_partitions") {
  REQUIRE(connected_pair_partitions(2).size() == 1);
  REQUIRE(connected_pair_partitions(4).size() == 1);
  REQUIRE(connected_pair_partitions(4)[0].str() == "{1,3}{2,4}");
  REQUIRE(connected_pair_partitions(6).size() == 4);
  for (int p = 2; p <= 8; p += 2) {
    int count = 0;
    for (const auto& pi : enumerate_pair_partitions(p))
      if (is_connected(intersection_graph(pi))) ++count;
    REQUIRE(count == int(connected_pair_partitions(p).size()));
  }
}

TEST_CASE("is_eps_noncrossing frozen examples") {
  const set_partition cross{4, {{1, 3}, {2, 4}}};
  const std::vector<int> word{1, 2, 1, 2};
  REQUIRE_FALSE(is_eps_noncrossing(cross, simple_graph::edgeless(2), word));
  REQUIRE(is_eps_noncrossing(cross, simple_graph::complete(2), word));
  const set_partition nested{4, {{1, 2}, {3, 4}}};
  REQUIRE(is_eps_noncrossing(nested, simple_graph::edgeless(2), {1, 1, 2, 2}));
  REQUIRE(is_eps_noncrossing(nested, simple_graph::complete(2), {1, 1, 2, 2}));
}

TEST_CASE("is_eps_noncrossing equals the quadruple oracle on random words") {
  oracle::rng r(20240811);
  for (int iter = 0; iter < 40; ++iter) {
    const auto g = oracle::random_graph(r, 4);
    const int p = r.uniform(1, 6);
    std::vector<int> word(p);
    for (auto& x : word) x = r.uniform(1, g.n);
    for (const auto& pi : enumerate_partitions(p))
      REQUIRE(is_eps_noncrossing(pi, g, word) ==
              oracle::eps_noncrossing_quadruple(g, word, pi));
  }
}

TEST_CASE("eps-noncrossing counts on tiny graphs") {
  REQUIRE(enumerate_eps_noncrossing(simple_graph::complete(2), {1, 2, 1, 2}).size() == 4);
  REQUIRE(enumerate_eps_noncrossing(simple_graph::edgeless(2), {1, 2, 1, 2}).size() == 3);
  REQUIRE(enumerate_eps_noncrossing(simple_graph::complete(3), {1}).size() == 1);
  REQUIRE(enumerate_eps_noncrossing(simple_graph::edgeless(1), {1}).size() == 1);
}

TEST_CASE("complete-graph eps-noncrossing characterization") {
  // On a complete graph the edge requirement is vacuous for distinct letters,
  // so membership reduces to: refines the kernel, and no two crossing blocks
  // carry the same letter (loops are never edges).
  oracle::rng r(7);
  for (int iter = 0; iter < 25; ++iter) {
    const int n = r.uniform(1, 3);
    const auto g = simple_graph::complete(n);
    const int p = r.uniform(1, 6);
    std::vector<int> word(p);
    for (auto& x : word) x = r.uniform(1, n);
    for (const auto& pi : enumerate_partitions(p)) {
      bool expect = refines_kernel(pi, word);
      if (expect) {
        const auto f = intersection_graph(pi);
        for (auto [a, b] : f.edges)
          expect = expect && word[pi.blocks[a - 1][0] - 1] != word[pi.blocks[b - 1][0] - 1];
      }
      REQUIRE(is_eps_noncrossing(pi, g, word) == expect);
    }
  }
}

TEST_CASE("complete-graph eps-noncrossing with injective words is kernel refinement") {
  // With pairwise-distinct letters the same-letter obstruction vanishes.
  const auto g = simple_graph::complete(6);
  const std::vector<int> word{2, 5, 2, 6, 5, 1};
  for (const auto& pi : enumerate_partitions(6))
    REQUIRE(is_eps_noncrossing(pi, g, word) ==
            (refines_kernel(pi, word) &&
             oracle::eps_noncrossing_quadruple(g, word, pi)));
}

TEST_CASE("edgeless eps-noncrossing kernel pairings are the noncrossing ones") {
  // For a pair partition pi = ker(word) on an edgeless graph, membership in
  // NC(g, word) is plain noncrossingness.
  const auto g = simple_graph::edgeless(4);
  for (const auto& pi : enumerate_pair_partitions(8)) {
    std::vector<int> word(8);
    const auto idx = pi.block_index();
    for (int i = 1; i <= 8; ++i) word[i - 1] = idx[i] + 1;
    REQUIRE(is_eps_noncrossing(pi, g, word) == is_noncrossing(pi));
  }
}

TEST_CASE("moment-cumulant transform frozen sequences") {
  using vr = std::vector<rat>;
  const vr sc{rat(0), rat(1), rat(0), rat(2), rat(0), rat(5)};
  REQUIRE(moments_to_free_cumulants(sc) == vr{rat(0), rat(1), rat(0), rat(0), rat(0), rat(0)});
  const vr gauss{rat(0), rat(1), rat(0), rat(3), rat(0), rat(15)};
  REQUIRE(moments_to_free_cumulants(gauss) == vr{rat(0), rat(1), rat(0), rat(1), rat(0), rat(4)});
  vr kappa(12, rat(0));
  kappa[1] = rat(1);
  const auto m = free_cumulants_to_moments(kappa);
  for (int p = 1; p <= 6; ++p) {
    REQUIRE(m[2 * p - 1] == rat(catalan(p)));
    REQUIRE(m[2 * p - 2] == 0);
  }
}

TEST_CASE("Gaussian free cumulants count connected pairings") {
  std::vector<rat> gauss(8);
  for (int p = 1; p <= 8; ++p) gauss[p - 1] = p % 2 ? rat(0) : rat(odd_double_factorial(p / 2));
  const auto kappa = moments_to_free_cumulants(gauss);
  for (int p = 2; p <= 8; p += 2)
    REQUIRE(kappa[p - 1] == rat(connected_pair_partitions(p).size()));
}

TEST_CASE("cumulants-to-moments via brute NC sum") {
  // m_p = sum over noncrossing partitions of the product of block cumulants.
  oracle::rng r(99);
  for (int iter = 0; iter < 10; ++iter) {
    std::vector<rat> kappa(6);
    for (auto& k : kappa) k = r.rational(4, -2, 2);
    const auto m = free_cumulants_to_moments(kappa);
    for (int p = 1; p <= 6; ++p) {
      rat expect(0);
      for (const auto& pi : oracle::all_partitions(p)) {
        if (oracle::crossing_pairs_quadruple(pi) != 0) continue;
        rat term(1);
        for (const auto& b : pi.blocks) term *= kappa[int(b.size()) - 1];
        expect += term;
      }
      REQUIRE(m[p - 1] == expect);
    }
  }
}

TEST_CASE("transform round trip") {
  oracle::rng r(5);
  for (int iter = 0; iter < 20; ++iter) {
    const int len = r.uniform(1, 12);
    std::vector<rat> m(len);
    for (auto& x : m) x = r.rational(5, -3, 3);
    REQUIRE(free_cumulants_to_moments(moments_to_free_cumulants(m)) == m);
    REQUIRE(moments_to_free_cumulants(free_cumulants_to_moments(m)) == m);
  }
  std::vector<rat> too_long(17, rat(0));
  REQUIRE_THROWS_AS(moments_to_free_cumulants(too_long), error);
}

TEST_CASE("refines_kernel") {
  const std::vector<int> word{3, 1, 3, 1};
  REQUIRE(refines_kernel(set_partition{4, {{1, 3}, {2, 4}}}, word));
  REQUIRE(refines_kernel(set_partition{4, {{1}, {2, 4}, {3}}}, word));
  REQUIRE_FALSE(refines_kernel(set_partition{4, {{1, 2}, {3, 4}}}, word));
}
