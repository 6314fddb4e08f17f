// graphon-clt: command-line front end for the limit-law toolkit.  Every
// subcommand is a thin wrapper over the library; all numeric work happens in
// the headers under include/gclt.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gclt/gclt.hpp"

namespace {

using namespace gclt;

// The env var caps internal parallelism.  All current kernels are
// sequential, so any valid cap is trivially honored; the value is still
// validated so misconfiguration fails fast and loudly.
void check_threads_env() {
  const char* v = std::getenv("GRAPHON_CLT_THREADS");
  if (!v) return;
  const std::string s(v);
  bool ok = !s.empty() && s.size() <= 6;
  for (char c : s) ok = ok && c >= '0' && c <= '9';
  ok = ok && std::atoi(s.c_str()) >= 1;
  if (!ok) fail(errc::parse, "GRAPHON_CLT_THREADS must be a positive integer, got '" + s + "'");
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<rat> parse_rat_list(const std::string& s) {
  std::vector<rat> out;
  for (const auto& tok : split_commas(s)) out.push_back(parse_rat(tok));
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& tok : split_commas(s)) {
    rat r = parse_rat(tok);
    if (denominator(r) != 1 || r < 1 || r > 1'000'000)
      fail(errc::parse, "expected a positive integer, got '" + tok + "'");
    out.push_back(int(numerator(r).convert_to<long long>()));
  }
  return out;
}

// const:<q> | arcsine | blocks:<file> | <file>
step_graphon<rat> parse_graphon_arg(const std::string& spec) {
  if (spec == "arcsine") return arcsine_graphon<rat>();
  if (spec.rfind("const:", 0) == 0) return constant_graphon<rat>(parse_rat(spec.substr(6)));
  const std::string path = spec.rfind("blocks:", 0) == 0 ? spec.substr(7) : spec;
  graphon_file f = load_graphon_file(path);
  if (f.kind != "step")
    fail(errc::parse, path + ": expected a step graphon, found kind '" + f.kind + "'");
  return f.step;
}

decorated_step_graphon<rat> parse_decorated_arg(const std::string& path) {
  graphon_file f = load_graphon_file(path);
  if (f.kind != "decorated")
    fail(errc::parse, path + ": expected a decorated graphon, found kind '" + f.kind + "'");
  return f.decorated;
}

mixed_q_matrix parse_mixedq_arg(const std::string& path) {
  graphon_file f = load_graphon_file(path);
  if (f.kind != "mixedq")
    fail(errc::parse, path + ": expected a mixed-q matrix, found kind '" + f.kind + "'");
  return f.mixedq;
}

// complete:<n> | edgeless:<n> | path:<n> | cycle:<n> | <edge list file>
simple_graph parse_graph_arg(const std::string& spec) {
  for (const char* lit : {"complete:", "edgeless:", "path:", "cycle:"}) {
    if (spec.rfind(lit, 0) != 0) continue;
    const auto ns = parse_int_list(spec.substr(std::string(lit).size()));
    if (ns.size() != 1) fail(errc::parse, "expected one vertex count in '" + spec + "'");
    const int n = ns[0];
    if (spec[0] == 'c' && spec[1] == 'o') return simple_graph::complete(n);
    if (spec[0] == 'e') return simple_graph::edgeless(n);
    if (spec[0] == 'p') return simple_graph::path(n);
    if (n < 3) fail(errc::parse, "cycle needs at least 3 vertices");
    return simple_graph::cycle(n);
  }
  return load_edge_list(spec);
}

// semicircle | gaussian | rademacher | moments:<m1,m2,...>
base_law parse_law_arg(const std::string& spec, int order) {
  if (spec == "semicircle") return base_law::semicircle(order);
  if (spec == "gaussian") return base_law::gaussian(order);
  if (spec == "rademacher") return base_law::rademacher(order);
  if (spec.rfind("moments:", 0) == 0) {
    auto m = parse_rat_list(spec.substr(8));
    if (int(m.size()) < order)
      fail(errc::parse, "law needs moments through order " + std::to_string(order) + ", got " +
                            std::to_string(m.size()));
    return base_law::from_moments("custom", std::move(m));
  }
  fail(errc::parse, "unknown law '" + spec +
                        "' (try semicircle, gaussian, rademacher, moments:<list>)");
}

struct out_table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string table_csv(const out_table& t) {
  std::ostringstream os;
  for (size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << "\n";
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
    os << "\n";
  }
  return os.str();
}

std::string table_json(const out_table& t) {
  njson arr = njson::array();
  for (const auto& row : t.rows) {
    njson obj;
    for (size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = row[c];
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

void emit(const out_table& t, const std::string& format, const std::string& out_path) {
  emit_text(format == "json" ? table_json(t) : table_csv(t), out_path);
}

// ---------------------------------------------------------------------------

struct common_opts {
  std::string format = "csv";
  std::string out;
};

struct moments_opts : common_opts {
  std::string graphon;
  std::string h;
  std::string mode = "exact";
  int max_order = 8;
  bool cumulants = false;
};

void run_moments(const moments_opts& o) {
  const step_graphon<rat> w = parse_graphon_arg(o.graphon);
  out_table t;
  const std::string kind = o.cumulants ? "cumulant" : "moment";
  if (o.mode == "exact") {
    std::vector<rat> h;
    if (!o.h.empty()) h = parse_rat_list(o.h);
    const std::vector<rat>* hp = o.h.empty() ? nullptr : &h;
    const auto vals = o.cumulants ? mu_w_free_cumulants(w, o.max_order, hp)
                                  : mu_w_moments(w, o.max_order, hp);
    t.columns = {"p", kind, kind + "_decimal"};
    for (int p = 1; p <= o.max_order; ++p)
      t.rows.push_back({std::to_string(p), format_rat(vals[p - 1]),
                        format_double(vals[p - 1].convert_to<double>())});
  } else {
    std::vector<std::vector<double>> fv(w.d, std::vector<double>(w.d));
    std::vector<double> fb(w.d + 1);
    for (int a = 0; a < w.d; ++a)
      for (int b = 0; b < w.d; ++b) fv[a][b] = to_double(w.values[a][b]);
    for (int i = 0; i <= w.d; ++i) fb[i] = to_double(w.breakpoints[i]);
    const step_graphon<double> wf{w.d, fv, fb};
    std::vector<double> h;
    if (!o.h.empty())
      for (const rat& r : parse_rat_list(o.h)) h.push_back(r.convert_to<double>());
    const std::vector<double>* hp = o.h.empty() ? nullptr : &h;
    const auto vals = o.cumulants ? mu_w_free_cumulants(wf, o.max_order, hp)
                                  : mu_w_moments(wf, o.max_order, hp);
    t.columns = {"p", kind + "_decimal"};
    for (int p = 1; p <= o.max_order; ++p)
      t.rows.push_back({std::to_string(p), format_double(vals[p - 1])});
  }
  emit(t, o.format, o.out);
}

struct finite_opts : common_opts {
  std::string graph;
  std::string law = "semicircle";
  std::string sigma;
  int order = 4;
};

void run_finite(const finite_opts& o) {
  const simple_graph g = parse_graph_arg(o.graph);
  const base_law law = parse_law_arg(o.law, o.order);
  std::vector<rat> sigma;
  if (!o.sigma.empty()) sigma = parse_rat_list(o.sigma);
  out_table t;
  t.columns = {"p", "value", "value_decimal", "exact"};
  for (int p = 1; p <= o.order; ++p) {
    const finite_moment m = finite_sum_moment(g, law, p, sigma);
    t.rows.push_back({std::to_string(p), m.exact ? format_rat(m.exact_value) : "",
                      format_double(m.value), m.exact ? "1" : "0"});
  }
  emit(t, o.format, o.out);
}

struct convergence_opts : common_opts {
  std::string family;
  std::string graphon;
  std::string graphs;
  std::string law = "semicircle";
  std::string n_list;
  int p = 4;
  std::uint64_t seed = 1;
};

void run_convergence(const convergence_opts& o) {
  const std::vector<int> ns = parse_int_list(o.n_list);
  convergence_family fam;
  if (o.family == "complete" || o.family == "edgeless") {
    if (!o.graphon.empty())
      fail(errc::parse, "--graphon is fixed by the " + o.family + " family");
    fam = o.family == "complete" ? convergence_family::complete_family(ns)
                                 : convergence_family::edgeless_family(ns);
  } else if (o.family == "w-random") {
    if (o.graphon.empty()) fail(errc::parse, "w-random family needs --graphon");
    fam = convergence_family::w_random_family(parse_graphon_arg(o.graphon), ns, o.seed);
  } else if (o.family == "explicit") {
    if (o.graphon.empty()) fail(errc::parse, "explicit family needs --graphon (the limit)");
    if (o.graphs.empty()) fail(errc::parse, "explicit family needs --graphs");
    std::vector<simple_graph> graphs;
    for (const auto& path : split_commas(o.graphs)) graphs.push_back(parse_graph_arg(path));
    fam = convergence_family::explicit_family(std::move(graphs), parse_graphon_arg(o.graphon));
  } else {
    fail(errc::parse, "unknown family '" + o.family +
                          "' (try complete, edgeless, w-random, explicit)");
  }
  const base_law law = parse_law_arg(o.law, o.p);
  const convergence_table table = convergence_report(fam, law, o.p);
  if (o.format == "json") {
    emit_text(convergence_to_json(table).dump(2) + "\n", o.out);
  } else {
    std::ostringstream os;
    table.write_csv(os);
    emit_text(os.str(), o.out);
  }
}

struct fock_opts : common_opts {
  std::string graphon;
  std::string h;
  int max_order = 8;
};

void run_fock_verify(const fock_opts& o) {
  const step_graphon<rat> w = parse_graphon_arg(o.graphon);
  std::vector<rat> h(w.d, rat(1));
  if (!o.h.empty()) h = parse_rat_list(o.h);
  const auto fock = fock_moments(w, h, o.max_order);
  const auto pairing = mu_w_moments(w, o.max_order, h);
  out_table t;
  t.columns = {"p", "fock", "pairing", "equal"};
  bool all_equal = true;
  for (int p = 1; p <= o.max_order; ++p) {
    const bool eq = fock[p - 1] == pairing[p - 1];
    all_equal = all_equal && eq;
    t.rows.push_back(
        {std::to_string(p), format_rat(fock[p - 1]), format_rat(pairing[p - 1]), eq ? "1" : "0"});
  }
  emit(t, o.format, o.out);
  std::cout << (all_equal ? "MATCH" : "MISMATCH") << "\n";
  if (!all_equal)
    fail(errc::numeric_mismatch, "operator-model and pair-partition moments disagree");
}

struct gram_opts : common_opts {
  std::string graphon;
  int level = 3;
};

void run_gram_check(const gram_opts& o) {
  const step_graphon<rat> w = parse_graphon_arg(o.graphon);
  const rat residual = yang_baxter_check(w);
  out_table t;
  t.columns = {"level", "min_eigenvalue"};
  double worst = 0;
  for (int n = 1; n <= o.level; ++n) {
    const double ev = gram_min_eigenvalue(w, n);
    worst = std::min(worst, ev);
    t.rows.push_back({std::to_string(n), format_double(ev)});
  }
  emit(t, o.format, o.out);
  std::cout << "yang-baxter residual " << format_rat(residual) << "\n";
  if (residual != 0) fail(errc::numeric_mismatch, "Yang-Baxter residual is nonzero");
  if (worst < -1e-10)
    fail(errc::positivity_violation,
         "Gram operator has eigenvalue " + format_double(worst) + " below -1e-10");
  std::cout << "PASS" << "\n";
}

struct multivariate_opts : common_opts {
  std::string graphon;
  std::string word;
};

void run_multivariate(const multivariate_opts& o) {
  const decorated_step_graphon<rat> W = parse_decorated_arg(o.graphon);
  const std::vector<int> word = parse_int_list(o.word);
  const rat v = multivariate_moment(W, word);
  out_table t;
  t.columns = {"word", "value", "value_decimal"};
  std::string wtext;
  for (size_t i = 0; i < word.size(); ++i)
    wtext += (i ? " " : "") + std::to_string(word[i]);
  t.rows.push_back({wtext, format_rat(v), format_double(v.convert_to<double>())});
  emit(t, o.format, o.out);
}

struct mixedq_opts : common_opts {
  std::string graphon;
  std::string word;
  int max_order = 8;
  bool verify = false;
};

void run_mixedq(const mixedq_opts& o) {
  const mixed_q_matrix Q = parse_mixedq_arg(o.graphon);
  out_table t;
  if (!o.word.empty()) {
    const std::vector<int> word = parse_int_list(o.word);
    const rat v = mixed_q_word_moment(Q, word);
    t.columns = {"word", "value", "value_decimal"};
    std::string wtext;
    for (size_t i = 0; i < word.size(); ++i)
      wtext += (i ? " " : "") + std::to_string(word[i]);
    t.rows.push_back({wtext, format_rat(v), format_double(v.convert_to<double>())});
    emit(t, o.format, o.out);
    return;
  }
  t.columns = {"p", "moment", "moment_decimal"};
  if (o.verify) t.columns.push_back("definitional");
  bool all_equal = true;
  for (int p = 1; p <= o.max_order; ++p) {
    const rat v = mixed_q_sum_moment(Q, p);
    std::vector<std::string> row{std::to_string(p), format_rat(v),
                                 format_double(v.convert_to<double>())};
    if (o.verify) {
      const rat d = mixed_q_sum_moment_definitional(Q, p);
      all_equal = all_equal && d == v;
      row.push_back(format_rat(d));
    }
    t.rows.push_back(std::move(row));
  }
  emit(t, o.format, o.out);
  if (!all_equal)
    fail(errc::numeric_mismatch, "graphon route and definitional word sum disagree");
}

struct convolve_opts : common_opts {
  std::string graphon;
  std::string graphon2;
  std::string lambda = "1/2";
  std::string kind = "free";
};

void run_convolve(const convolve_opts& o) {
  const step_graphon<rat> a = parse_graphon_arg(o.graphon);
  const step_graphon<rat> b = parse_graphon_arg(o.graphon2);
  const conv_kind kind = o.kind == "classical" ? conv_kind::classical : conv_kind::free;
  const step_graphon<rat> w = convolution_graphon(a, b, parse_rat(o.lambda), kind);
  emit_text(step_graphon_to_json(w).dump(2) + "\n", o.out);
}

struct sample_opts : common_opts {
  std::string graphon;
  int n = 0;
  std::uint64_t seed = 1;
};

void run_sample(const sample_opts& o) {
  const step_graphon<rat> w = parse_graphon_arg(o.graphon);
  emit_text(format_edge_list(sample_w_random_graph(w, o.n, o.seed)), o.out);
}

// Known-law showcase: recomputes classical limit identities and prints one
// pass/fail line per check.
int run_examples() {
  int failures = 0;
  auto report = [&failures](bool ok, const std::string& label) {
    std::cout << (ok ? "PASS  " : "FAIL  ") << label << "\n";
    if (!ok) ++failures;
  };

  const auto m0 = mu_w_moments(constant_graphon<rat>(rat(0)), 12);
  bool ok = true;
  for (int p = 1; p <= 6; ++p) ok = ok && m0[2 * p - 1] == rat(catalan(p));
  report(ok, "edgeless kernel: Catalan moments");

  const auto m1 = mu_w_moments(constant_graphon<rat>(rat(1)), 10);
  ok = true;
  for (int p = 1; p <= 5; ++p) ok = ok && m1[2 * p - 1] == rat(odd_double_factorial(p));
  report(ok, "complete kernel: double-factorial moments");

  const auto mq = mu_w_moments(constant_graphon<rat>(rat(1, 2)), 10);
  report(mq == q_gaussian_moments(rat(1, 2), 10) && mq[5] == rat(71, 8),
         "constant kernel 1/2: crossing-number histogram");

  const auto mr = mu_w_moments(constant_graphon<rat>(rat(-1)), 10);
  ok = true;
  for (int p = 1; p <= 5; ++p) ok = ok && mr[2 * p - 1] == 1;
  report(ok, "kernel -1: two-point moments");

  const auto ma = mu_w_moments(arcsine_graphon<rat>(), 10);
  ok = true;
  for (int p = 1; p <= 5; ++p) ok = ok && ma[2 * p - 1] == rat(binomial(2 * p, p), bigint(1) << p);
  report(ok, "two-block kernel -1: central-binomial moments");

  {
    const rat z(0), m(-1);
    const auto km3 = make_step_graphon<rat>({{m, z, z}, {z, m, z}, {z, z, m}});
    const auto kk = mu_w_free_cumulants(km3, 10);
    const auto kr = mu_w_free_cumulants(constant_graphon<rat>(rat(-1)), 10);
    ok = true;
    for (int p = 2; p <= 10; p += 2)
      ok = ok && kk[p - 1] == rat(3) * scalar_pow(rat(1, 3), p / 2) * kr[p - 1];
    report(ok, "three-block kernel -1: dilated free-power cumulants");
  }

  {
    const auto w0 = constant_graphon<rat>(rat(0));
    const auto conv = convolution_graphon(w0, w0, rat(1, 2), conv_kind::classical);
    const auto mc = mu_w_moments(conv, 8);
    const auto base = mu_w_moments(w0, 8);
    ok = true;
    for (int p = 2; p <= 8; p += 2) {
      rat expect(0);
      for (int k = 0; k <= p; k += 2)
        expect += rat(binomial(p, k)) * scalar_pow(rat(1, 2), p / 2) *
                  (k ? base[k - 1] : rat(1)) * (k < p ? base[p - k - 1] : rat(1));
      ok = ok && mc[p - 1] == expect;
    }
    report(ok, "classical mixture of semicircles: binomial-convolution moments");
  }

  {
    const auto wm = constant_graphon<rat>(rat(-1));
    const auto conv = convolution_graphon(wm, wm, rat(1, 2), conv_kind::free);
    report(mu_w_moments(conv, 10) == ma, "free mixture of two-point laws: arcsine moments");
  }

  {
    const auto law = base_law::semicircle(4);
    ok = true;
    for (int n = 2; n <= 8; ++n) {
      const auto fm = finite_sum_moment(simple_graph::complete(n), law, 4);
      ok = ok && fm.exact && fm.exact_value == rat(3) - rat(1, n);
    }
    report(ok, "complete-graph sums: fourth moment 3 - 1/n");
  }

  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limit laws of sums of eps-independent variables"};
  app.require_subcommand(1);

  auto add_common = [](CLI::App* cmd, common_opts& o) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "write output to this file instead of stdout");
  };

  moments_opts mo;
  auto* c_moments = app.add_subcommand("moments", "moments of the limit law of a kernel");
  c_moments->add_option("--graphon", mo.graphon, "const:<q> | arcsine | blocks:<file> | <file>")
      ->required();
  c_moments->add_option("--max-order", mo.max_order, "largest moment order");
  c_moments->add_option("--weights", mo.h, "cell values of the weight function h");
  c_moments->add_option("--mode", mo.mode, "arithmetic mode")
      ->check(CLI::IsMember({"exact", "float"}));
  add_common(c_moments, mo);

  moments_opts co;
  co.cumulants = true;
  auto* c_cumulants = app.add_subcommand("cumulants", "free cumulants of the limit law");
  c_cumulants->add_option("--graphon", co.graphon, "kernel spec")->required();
  c_cumulants->add_option("--max-order", co.max_order, "largest cumulant order");
  c_cumulants->add_option("--weights", co.h, "cell values of the weight function h");
  c_cumulants->add_option("--mode", co.mode, "arithmetic mode")
      ->check(CLI::IsMember({"exact", "float"}));
  add_common(c_cumulants, co);

  finite_opts fo;
  auto* c_finite = app.add_subcommand("finite", "exact moments of a finite normalized sum");
  c_finite->add_option("--graph", fo.graph, "complete:<n> | edgeless:<n> | path:<n> | cycle:<n> | <file>")
      ->required();
  c_finite->add_option("--law", fo.law, "semicircle | gaussian | rademacher | moments:<list>");
  c_finite->add_option("--order", fo.order, "largest moment order");
  c_finite->add_option("--sigma", fo.sigma, "per-vertex scales (comma separated)");
  add_common(c_finite, fo);

  convergence_opts vo;
  auto* c_conv = app.add_subcommand("convergence", "finite moments against the limit");
  c_conv->add_option("--family", vo.family, "complete | edgeless | w-random | explicit")
      ->required();
  c_conv->add_option("--n", vo.n_list, "graph sizes, comma separated")->required();
  c_conv->add_option("--p", vo.p, "largest moment order");
  c_conv->add_option("--law", vo.law, "base law");
  c_conv->add_option("--graphon", vo.graphon, "kernel (w-random source / explicit limit)");
  c_conv->add_option("--graphs", vo.graphs, "edge-list files for the explicit family");
  c_conv->add_option("--seed", vo.seed, "sampling seed for the w-random family");
  add_common(c_conv, vo);

  fock_opts ko;
  auto* c_fock = app.add_subcommand("fock-verify",
                                    "compare operator-model moments with the pairing formula");
  c_fock->add_option("--graphon", ko.graphon, "kernel spec")->required();
  c_fock->add_option("--max-order", ko.max_order, "largest moment order");
  c_fock->add_option("--weights", ko.h, "cell values of the field vector h (default all ones)");
  add_common(c_fock, ko);

  gram_opts go;
  auto* c_gram = app.add_subcommand("gram-check",
                                    "positivity of the Gram operators and the braid identity");
  c_gram->add_option("--graphon", go.graphon, "kernel spec")->required();
  c_gram->add_option("--level", go.level, "check tensor levels 1..level");
  add_common(c_gram, go);

  multivariate_opts uo;
  auto* c_multi = app.add_subcommand("multivariate", "joint moment of a decorated kernel");
  c_multi->add_option("--graphon", uo.graphon, "decorated graphon JSON file")->required();
  c_multi->add_option("--word", uo.word, "label word, comma separated")->required();
  add_common(c_multi, uo);

  mixedq_opts qo;
  auto* c_mixedq = app.add_subcommand("mixedq", "mixed q-Gaussian moments");
  c_mixedq->add_option("--graphon", qo.graphon, "mixed-q matrix JSON file")->required();
  c_mixedq->add_option("--max-order", qo.max_order, "largest moment order");
  c_mixedq->add_option("--word", qo.word, "compute one word moment instead");
  c_mixedq->add_flag("--verify", qo.verify, "cross-check against the definitional word sum");
  add_common(c_mixedq, qo);

  convolve_opts xo;
  auto* c_convolve = app.add_subcommand("convolve", "convolution kernel of two graphons");
  c_convolve->add_option("--graphon", xo.graphon, "first kernel")->required();
  c_convolve->add_option("--graphon2", xo.graphon2, "second kernel")->required();
  c_convolve->add_option("--lambda", xo.lambda, "mixture weight in (0,1)");
  c_convolve->add_option("--kind", xo.kind, "convolution kind")
      ->check(CLI::IsMember({"classical", "free"}));
  add_common(c_convolve, xo);

  sample_opts so;
  auto* c_sample = app.add_subcommand("sample-graph", "sample a W-random graph");
  c_sample->add_option("--graphon", so.graphon, "nonnegative kernel spec")->required();
  c_sample->add_option("--n", so.n, "vertex count")->required();
  c_sample->add_option("--seed", so.seed, "sampling seed");
  add_common(c_sample, so);

  auto* c_examples = app.add_subcommand("examples", "run the known-law showcase suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    check_threads_env();
    if (*c_moments) run_moments(mo);
    if (*c_cumulants) run_moments(co);
    if (*c_finite) run_finite(fo);
    if (*c_conv) run_convergence(vo);
    if (*c_fock) run_fock_verify(ko);
    if (*c_gram) run_gram_check(go);
    if (*c_multi) run_multivariate(uo);
    if (*c_mixedq) run_mixedq(qo);
    if (*c_convolve) run_convolve(xo);
    if (*c_sample) run_sample(so);
    if (*c_examples) {
      const int failures = run_examples();
      if (failures > 0) fail(errc::numeric_mismatch, std::to_string(failures) + " checks failed");
    }
  } catch (const gclt::error& e) {
    std::cerr << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "Error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
