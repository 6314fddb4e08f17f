#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gclt/decorated.hpp"
#include "gclt/errors.hpp"
#include "gclt/finite_model.hpp"
#include "gclt/graphs.hpp"
#include "gclt/graphons.hpp"
#include "gclt/limit_law.hpp"
#include "gclt/scalar.hpp"

namespace gclt {

using njson = nlohmann::json;

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(errc::io, "read failure on '" + path + "'");
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) fail(errc::io, "write failure on '" + path + "'");
}

// Rational JSON values: "p/q" / "0.25" strings (exact), integers (exact), or
// floats (converted to their exact dyadic value).
inline rat scalar_from_json(const njson& v, const std::string& where) {
  if (v.is_string()) return parse_rat(v.get<std::string>());
  if (v.is_number_integer()) return rat(v.get<long long>());
  if (v.is_number_unsigned()) return rat(v.get<unsigned long long>());
  if (v.is_number_float()) return rat_from_double(v.get<double>());
  fail(errc::parse, where + ": expected a number or rational string");
}

namespace detail {

inline njson parse_json(const std::string& text, const std::string& origin) {
  try {
    return njson::parse(text);
  } catch (const njson::exception& e) {
    fail(errc::parse, origin + ": " + e.what());
  }
}

inline void check_keys(const njson& j, std::initializer_list<const char*> allowed,
                       const std::string& origin) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(errc::parse, origin + ": unknown key '" + key + "'");
  }
}

inline std::vector<rat> rat_vector(const njson& v, const std::string& where) {
  if (!v.is_array()) fail(errc::parse, where + ": expected an array");
  std::vector<rat> out;
  for (size_t i = 0; i < v.size(); ++i)
    out.push_back(scalar_from_json(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::vector<rat>> rat_matrix(const njson& v, const std::string& where) {
  if (!v.is_array()) fail(errc::parse, where + ": expected an array of rows");
  std::vector<std::vector<rat>> out;
  for (size_t i = 0; i < v.size(); ++i)
    out.push_back(rat_vector(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

// Tagged union for the three graphon file kinds.
struct graphon_file {
  std::string kind;  // "step" | "decorated" | "mixedq"
  step_graphon<rat> step;
  decorated_step_graphon<rat> decorated;
  mixed_q_matrix mixedq;
};

inline graphon_file parse_graphon_json(const std::string& text, const std::string& origin) {
  const njson j = detail::parse_json(text, origin);
  if (!j.is_object()) fail(errc::parse, origin + ": expected a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string())
    fail(errc::parse, origin + ": missing \"kind\"");
  graphon_file out;
  out.kind = j["kind"].get<std::string>();
  if (out.kind == "step") {
    detail::check_keys(j, {"kind", "d", "values", "breakpoints"}, origin);
    if (!j.contains("values")) fail(errc::parse, origin + ": missing \"values\"");
    auto values = detail::rat_matrix(j["values"], origin + ": values");
    if (j.contains("d") && (!j["d"].is_number_integer() ||
                            j["d"].get<long long>() != (long long)values.size()))
      fail(errc::parse, origin + ": \"d\" does not match the values matrix");
    if (j.contains("breakpoints"))
      out.step = make_step_graphon<rat>(
          values, detail::rat_vector(j["breakpoints"], origin + ": breakpoints"));
    else
      out.step = make_step_graphon<rat>(values);
  } else if (out.kind == "decorated") {
    detail::check_keys(j, {"kind", "n", "L", "values", "breakpoints"}, origin);
    for (const char* key : {"n", "L", "values"})
      if (!j.contains(key)) fail(errc::parse, origin + ": missing \"" + std::string(key) + "\"");
    const int n = j["n"].get<int>();
    const int L = j["L"].get<int>();
    const auto& v = j["values"];
    if (!v.is_array() || (int)v.size() != n)
      fail(errc::parse, origin + ": values must hold " + std::to_string(n) + " rows");
    std::vector<std::vector<small_matrix<rat>>> values(n);
    for (int a = 0; a < n; ++a) {
      if (!v[a].is_array() || (int)v[a].size() != n)
        fail(errc::parse, origin + ": values[" + std::to_string(a) + "] must hold " +
                              std::to_string(n) + " entries");
      for (int b = 0; b < n; ++b)
        values[a].push_back(detail::rat_matrix(
            v[a][b], origin + ": values[" + std::to_string(a) + "][" + std::to_string(b) + "]"));
    }
    if (j.contains("breakpoints"))
      out.decorated = make_decorated_step_graphon<rat>(
          values, detail::rat_vector(j["breakpoints"], origin + ": breakpoints"));
    else
      out.decorated = make_decorated_step_graphon<rat>(values);
    if (out.decorated.L != L)
      fail(errc::parse, origin + ": \"L\" does not match the decoration matrices");
  } else if (out.kind == "mixedq") {
    detail::check_keys(j, {"kind", "q"}, origin);
    if (!j.contains("q")) fail(errc::parse, origin + ": missing \"q\"");
    out.mixedq = make_mixed_q_matrix(detail::rat_matrix(j["q"], origin + ": q"));
  } else {
    fail(errc::parse, origin + ": unknown kind '" + out.kind + "'");
  }
  return out;
}

inline graphon_file load_graphon_file(const std::string& path) {
  return parse_graphon_json(read_text_file(path), path);
}

inline njson step_graphon_to_json(const step_graphon<rat>& w) {
  njson values = njson::array();
  for (const auto& row : w.values) {
    njson r = njson::array();
    for (const auto& v : row) r.push_back(format_rat(v));
    values.push_back(std::move(r));
  }
  njson bps = njson::array();
  for (const auto& b : w.breakpoints) bps.push_back(format_rat(b));
  return njson{{"kind", "step"}, {"d", w.d}, {"values", values}, {"breakpoints", bps}};
}

// Edge-list text format: first line "n <vertex count>", then one 1-indexed
// "u v" pair per line.  Blank lines are ignored.
inline simple_graph parse_edge_list(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  simple_graph g;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    const std::string at = origin + ":" + std::to_string(lineno);
    if (!have_header) {
      int n = 0;
      std::string extra;
      if (first != "n" || !(ls >> n) || ls >> extra || n < 0)
        fail(errc::parse, at + ": expected header \"n <vertex count>\"");
      g.n = n;
      have_header = true;
      continue;
    }
    int u = 0, v = 0;
    std::string extra;
    try {
      u = std::stoi(first);
    } catch (const std::exception&) {
      fail(errc::parse, at + ": expected \"u v\"");
    }
    if (!(ls >> v) || ls >> extra) fail(errc::parse, at + ": expected \"u v\"");
    if (u == v) fail(errc::parse, at + ": loop edge " + std::to_string(u) + " " +
                                      std::to_string(v) + " (graphs here are loopless)");
    if (u < 1 || u > g.n || v < 1 || v > g.n)
      fail(errc::parse, at + ": vertex out of range 1.." + std::to_string(g.n));
    g.add_edge(u, v);
  }
  if (!have_header) fail(errc::parse, origin + ": missing \"n <vertex count>\" header");
  return g;
}

inline simple_graph load_edge_list(const std::string& path) {
  return parse_edge_list(read_text_file(path), path);
}

inline std::string format_edge_list(const simple_graph& g) {
  std::ostringstream out;
  out << "n " << g.n << "\n";
  for (const auto& [u, v] : g.edges) out << u << " " << v << "\n";
  return out.str();
}

inline njson convergence_to_json(const convergence_table& t) {
  njson rows = njson::array();
  for (const auto& r : t.rows) {
    njson row{{"n", r.n},
              {"p", r.p},
              {"finite_decimal", r.finite.value},
              {"limit", format_rat(r.limit)},
              {"limit_decimal", r.limit.convert_to<double>()},
              {"gap_decimal", r.gap},
              {"exact", r.finite.exact}};
    row["finite"] = r.finite.exact ? njson(format_rat(r.finite.exact_value)) : njson();
    row["gap"] = r.gap_exact ? njson(format_rat(r.gap_exact_value)) : njson();
    rows.push_back(std::move(row));
  }
  njson mono = njson::array();
  for (const auto& [p, flag] : t.gap_monotone) mono.push_back(njson{{"p", p}, {"monotone", flag}});
  return njson{{"family", t.family}, {"law", t.law},           {"p_max", t.p_max},
               {"rows", rows},       {"gap_monotone", mono}};
}

}  // namespace gclt
