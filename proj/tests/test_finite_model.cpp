#include <sstream>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "gclt/gclt.hpp"
#include "oracles.hpp"

using namespace gclt;

TEST_CASE("base_law construction and validation") {
  const auto sc = base_law::semicircle(8);
  REQUIRE(sc.moments[3] == 2);
  REQUIRE(sc.free_cumulants[1] == 1);
  REQUIRE(sc.free_cumulants[3] == 0);

  const auto gauss = base_law::gaussian(6);
  REQUIRE(gauss.moments[5] == 15);
  REQUIRE(gauss.free_cumulants[5] == 4);

  const auto rad = base_law::rademacher(6);
  REQUIRE(rad.moments == std::vector<rat>{rat(0), rat(1), rat(0), rat(1), rat(0), rat(1)});
  REQUIRE(rad.free_cumulants[3] == rat(-1));
  REQUIRE(rad.free_cumulants[5] == rat(2));

  REQUIRE_THROWS_AS(base_law::from_moments("x", {rat(1), rat(1)}), error);
  REQUIRE_THROWS_AS(base_law::from_moments("x", {rat(0), rat(2)}), error);
  // m_4 < m_2^2 violates the Hankel form
  REQUIRE_THROWS_AS(base_law::from_moments("x", {rat(0), rat(1), rat(0), rat(1, 2)}), error);
  try {
    base_law::from_moments("x", {rat(0), rat(1), rat(0), rat(1, 2)});
  } catch (const error& e) {
    REQUIRE(e.code() == errc::positivity_violation);
  }
}

TEST_CASE("tau_word frozen examples") {
  const auto sc = base_law::semicircle(4);
  REQUIRE(tau_word(simple_graph::complete(3), {1, 1}, sc) == 1);
  REQUIRE(tau_word(simple_graph::edgeless(2), {1, 1}, sc) == 1);
  REQUIRE(tau_word(simple_graph::edgeless(2), {1, 2, 1, 2}, sc) == 0);
  REQUIRE(tau_word(simple_graph::complete(2), {1, 2, 1, 2}, sc) == 1);
  REQUIRE_THROWS_AS(tau_word(simple_graph::complete(2), std::vector<int>(11, 1), sc), error);
}

TEST_CASE("singleton kernel blocks kill the word") {
  oracle::rng r(111);
  const auto gauss = base_law::gaussian(6);
  for (int iter = 0; iter < 30; ++iter) {
    const auto g = oracle::random_graph(r, 4);
    const int p = r.uniform(1, 6);
    std::vector<int> word(p);
    for (auto& x : word) x = r.uniform(1, g.n);
    bool singleton = false;
    for (const auto& b : kernel_of(word).blocks) singleton = singleton || b.size() == 1;
    if (singleton) REQUIRE(tau_word(g, word, gauss) == 0);
  }
}

TEST_CASE("pair-kernel words give the eps-noncrossing indicator") {
  oracle::rng r(127);
  const auto sc8 = base_law::semicircle(8);
  const auto ga8 = base_law::gaussian(8);
  for (const base_law* law : {&sc8, &ga8}) {
    for (int iter = 0; iter < 20; ++iter) {
      const auto g = oracle::random_graph(r, 5);
      for (const auto& pi : enumerate_pair_partitions(6)) {
        // letters: block index mapped to a random distinct-ish vertex
        std::vector<int> letters(pi.block_count());
        for (auto& x : letters) x = r.uniform(1, g.n);
        // force distinct letters per block pair by rejection: reuse allowed
        // only when it keeps the kernel equal to pi
        std::vector<int> word(6);
        const auto idx = pi.block_index();
        bool kernel_ok = true;
        for (int i = 1; i <= 6; ++i) word[i - 1] = letters[idx[i]];
        kernel_ok = kernel_of(word) == pi;
        if (!kernel_ok) continue;
        const rat t = tau_word(g, word, *law);
        REQUIRE(t == (is_eps_noncrossing(pi, g, word) ? rat(1) : rat(0)));
      }
    }
  }
}

TEST_CASE("complete graphs factorize words classically") {
  // On a complete graph the family is classically independent, so a word
  // moment is the product of its letter-class moments — for any base law.
  oracle::rng r(131);
  const auto sc6 = base_law::semicircle(6);
  const auto ga6 = base_law::gaussian(6);
  const auto ra6 = base_law::rademacher(6);
  for (const base_law* law : {&sc6, &ga6, &ra6}) {
    for (int iter = 0; iter < 20; ++iter) {
      const int n = r.uniform(1, 4);
      const auto g = simple_graph::complete(n);
      const int p = r.uniform(1, 6);
      std::vector<int> word(p);
      for (auto& x : word) x = r.uniform(1, n);
      rat expect(1);
      for (const auto& b : kernel_of(word).blocks) expect *= law->moments[b.size() - 1];
      REQUIRE(tau_word(g, word, *law) == expect);
    }
  }
}

TEST_CASE("finite_sum_moment frozen values") {
  const auto sc = base_law::semicircle(6);
  for (int n = 2; n <= 8; ++n) {
    const auto m = finite_sum_moment(simple_graph::complete(n), sc, 4);
    REQUIRE(m.exact);
    REQUIRE(m.exact_value == rat(3) - rat(1, n));
  }
  for (int n : {1, 2, 3, 5, 9}) {
    const auto m4 = finite_sum_moment(simple_graph::edgeless(n), sc, 4);
    REQUIRE(m4.exact_value == rat(2));
    const auto m6 = finite_sum_moment(simple_graph::edgeless(n), sc, 6);
    REQUIRE(m6.exact_value == rat(5));
    const auto m3 = finite_sum_moment(simple_graph::edgeless(n), sc, 3);
    REQUIRE(m3.exact);
    REQUIRE(m3.exact_value == 0);
  }
  REQUIRE_THROWS_AS(finite_sum_moment(simple_graph::complete(100), sc, 4), error);
}

TEST_CASE("complete-graph sums match the classical i.i.d. oracle") {
  const auto ga6 = base_law::gaussian(6);
  const auto ra6 = base_law::rademacher(6);
  for (const base_law* law : {&ga6, &ra6}) {
    for (int n = 1; n <= 4; ++n) {
      for (int p = 1; p <= 6; ++p) {
        const auto m = finite_sum_moment(simple_graph::complete(n), *law, p);
        REQUIRE(m.exact);
        REQUIRE(m.exact_value == oracle::classical_iid_moment(law->moments, n, p));
      }
    }
  }
}

TEST_CASE("uniform sigma cancels") {
  const auto gauss = base_law::gaussian(6);
  oracle::rng r(139);
  for (int iter = 0; iter < 10; ++iter) {
    const auto g = oracle::random_graph(r, 4);
    const rat c = rat(r.uniform(1, 5), r.uniform(1, 3));
    const std::vector<rat> sigma(g.n, c);
    for (int p = 1; p <= 4; ++p) {
      const auto plain = finite_sum_moment(g, gauss, p);
      const auto scaled = finite_sum_moment(g, gauss, p, sigma);
      REQUIRE(plain.exact_value == scaled.exact_value);
    }
  }
}

TEST_CASE("weighted sums are normalized to variance one") {
  const auto sc = base_law::semicircle(6);
  oracle::rng r(149);
  for (int iter = 0; iter < 10; ++iter) {
    const auto g = oracle::random_graph(r, 4);
    std::vector<rat> sigma(g.n);
    for (auto& s : sigma) s = rat(r.uniform(1, 4));
    const auto m2 = finite_sum_moment(g, sc, 2, sigma);
    REQUIRE(m2.exact);
    REQUIRE(m2.exact_value == 1);
  }
  REQUIRE_THROWS_AS(
      finite_sum_moment(simple_graph::complete(2), sc, 2, {rat(1)}), error);
  REQUIRE_THROWS_AS(
      finite_sum_moment(simple_graph::complete(2), sc, 2, {rat(1), rat(0)}), error);
}

TEST_CASE("weighted complete sums interpolate the gaussian limit") {
  // K_n with scales sigma: classical CLT algebra gives
  // m_4 = 3 - 2 * sum sigma_k^4 / (sum sigma_k^2)^2 for gaussian-cumulant
  // laws; check against the semicircle law's formula via direct enumeration
  // instead: just verify the generic-law identity on a fixed instance.
  const auto gauss = base_law::gaussian(4);
  const std::vector<rat> sigma{rat(1), rat(2), rat(1)};
  const auto m4 = finite_sum_moment(simple_graph::complete(3), gauss, 4, sigma);
  // var total = 1+4+1=6; m4 = 3 (gaussian sums stay gaussian) exactly:
  REQUIRE(m4.exact_value == rat(3));
}

TEST_CASE("mixed_q_sum_moment frozen values") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::vector<rat>> ones(n, std::vector<rat>(n, rat(1)));
    REQUIRE(mixed_q_sum_moment(make_mixed_q_matrix(ones), 4) == 3);

    const rat q(-2, 5);
    std::vector<std::vector<rat>> qs(n, std::vector<rat>(n, q));
    REQUIRE(mixed_q_sum_moment(make_mixed_q_matrix(qs), 4) == rat(2) + q);

    std::vector<std::vector<rat>> negs(n, std::vector<rat>(n, rat(-1)));
    REQUIRE(mixed_q_sum_moment(make_mixed_q_matrix(negs), 6) == 1);
  }
}

TEST_CASE("mixed-q graphon route equals the definitional word sum") {
  oracle::rng r(151);
  for (int iter = 0; iter < 10; ++iter) {
    const int n = r.uniform(1, 5);
    std::vector<std::vector<rat>> q(n, std::vector<rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) q[i][j] = q[j][i] = r.rational(5, -1, 1);
    const auto Q = make_mixed_q_matrix(q);
    for (int p = 1; p <= 6; ++p)
      REQUIRE(mixed_q_sum_moment(Q, p) == mixed_q_sum_moment_definitional(Q, p));
  }
}

TEST_CASE("convergence_report complete family") {
  const auto table = convergence_report(convergence_family::complete_family({2, 4, 8}),
                                        base_law::semicircle(4), 4);
  REQUIRE(table.family == std::string("complete"));
  REQUIRE(table.rows.size() == 12);
  std::vector<rat> gaps;
  for (const auto& row : table.rows) {
    REQUIRE(row.finite.exact);
    REQUIRE(row.gap_exact);
    if (row.p == 4) {
      gaps.push_back(row.gap_exact_value);
      REQUIRE(row.limit == 3);
    }
  }
  REQUIRE(gaps == std::vector<rat>{rat(1, 2), rat(1, 4), rat(1, 8)});
  for (const auto& [p, mono] : table.gap_monotone) REQUIRE(mono);
}

TEST_CASE("convergence_report edgeless family is exact at every n") {
  const auto table = convergence_report(convergence_family::edgeless_family({1, 3, 6}),
                                        base_law::semicircle(6), 6);
  for (const auto& row : table.rows) {
    REQUIRE(row.gap_exact);
    REQUIRE(row.gap_exact_value == 0);
  }
}

TEST_CASE("w-random convergence is seed-deterministic") {
  const auto w = constant_graphon<rat>(rat(1, 2));
  const auto fam1 = convergence_family::w_random_family(w, {6, 10}, 42);
  const auto fam2 = convergence_family::w_random_family(w, {6, 10}, 42);
  const auto law = base_law::semicircle(4);
  const auto t1 = convergence_report(fam1, law, 4);
  const auto t2 = convergence_report(fam2, law, 4);
  REQUIRE(t1.rows.size() == t2.rows.size());
  for (size_t i = 0; i < t1.rows.size(); ++i) {
    REQUIRE(t1.rows[i].finite.exact_value == t2.rows[i].finite.exact_value);
    REQUIRE(t1.rows[i].gap_exact_value == t2.rows[i].gap_exact_value);
  }
}

TEST_CASE("explicit family uses the given graphs") {
  std::vector<simple_graph> graphs{simple_graph::complete(3), simple_graph::complete(5)};
  const auto fam =
      convergence_family::explicit_family(graphs, constant_graphon<rat>(rat(1)));
  const auto table = convergence_report(fam, base_law::semicircle(4), 4);
  for (const auto& row : table.rows)
    if (row.p == 4) REQUIRE(row.finite.exact_value == rat(3) - rat(1, row.n));
}

TEST_CASE("csv serialization shape") {
  const auto table = convergence_report(convergence_family::complete_family({2, 4}),
                                        base_law::semicircle(4), 4);
  std::ostringstream os;
  table.write_csv(os);
  const std::string text = os.str();
  REQUIRE(text.rfind("n,p,finite,finite_decimal,limit,limit_decimal,gap,gap_decimal,exact\n",
                     0) == 0);
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  REQUIRE(lines == 9);  // header + 8 rows
  REQUIRE(text.find("5/2") != std::string::npos);  // finite m4 at n=2
}
