#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "gclt/errors.hpp"

namespace gclt {

using bigint = boost::multiprecision::cpp_int;
using rat = boost::multiprecision::cpp_rational;

// Numeric kernels are templated on the scalar: `rat` for the exact pipeline,
// `double` for the float pipeline.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<rat> {
  static constexpr bool exact = true;
  static rat from_rat(const rat& x) { return x; }
  static double to_double(const rat& x) { return x.convert_to<double>(); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double from_rat(const rat& x) { return x.convert_to<double>(); }
  static double to_double(double x) { return x; }
};

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

template <class S>
double to_double(const S& x) {
  return scalar_traits<S>::to_double(x);
}

template <class S>
S from_rat(const rat& x) {
  return scalar_traits<S>::from_rat(x);
}

template <class S>
S scalar_pow(S base, int e) {
  S out(1);
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

// Accepts "3", "-7/4" and plain decimals like "0.25" (converted exactly).
inline rat parse_rat(const std::string& s) {
  auto bad = [&]() -> rat { fail(errc::parse, "invalid rational literal '" + s + "'"); };
  if (s.empty()) return bad();
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      if (slash == 0 || slash + 1 >= s.size()) return bad();
      bigint num(s.substr(0, slash));
      bigint den(s.substr(slash + 1));
      if (den == 0) return bad();
      return rat(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return rat(bigint(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") return bad();
    bigint num(digits);
    bigint den(1);
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return rat(num, den);
  } catch (const std::exception&) {
    return bad();
  }
}

// Exact value of the double (dyadic); use decimal strings for exact decimals.
inline rat rat_from_double(double x) {
  if (!std::isfinite(x)) fail(errc::parse, "non-finite number");
  if (x == 0) return rat(0);
  int e = 0;
  double m = std::frexp(x, &e);
  auto im = static_cast<long long>(std::ldexp(m, 53));
  e -= 53;
  rat out(im);
  if (e > 0)
    out *= scalar_pow(rat(2), e);
  else if (e < 0)
    out /= scalar_pow(rat(2), -e);
  return out;
}

inline std::string format_rat(const rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

// 17 significant digits round-trip doubles exactly.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class S>
std::string format_scalar(const S& x) {
  if constexpr (is_exact_v<S>)
    return format_rat(x);
  else
    return format_double(x);
}

inline bigint binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  bigint out = 1;
  for (int i = 0; i < k; ++i) {
    out *= n - i;
    out /= i + 1;
  }
  return out;
}

// (2p - 1)!! counts the pair partitions of a 2p-set.
inline bigint odd_double_factorial(int p) {
  bigint out = 1;
  for (int k = 3; k <= 2 * p - 1; k += 2) out *= k;
  return p >= 1 ? out : bigint(1);
}

inline bigint catalan(int p) {
  if (p <= 1) return 1;
  return binomial(2 * p, p) / (p + 1);
}

}  // namespace gclt
