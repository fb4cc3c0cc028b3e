#pragma once

#include "genturan/graph.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace genturan {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Parses "a/b", "-a/b", "17" or a plain decimal such as "0.125" exactly.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  auto parse_int = [&](std::string_view digits) {
    if (digits.empty()) fail();
    BigInt v = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') fail();
      v = v * 10 + (c - '0');
    }
    return v;
  };
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) fail();
    result = Rational(num, den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) fail();
    BigInt w = whole.empty() ? BigInt(0) : parse_int(whole);
    BigInt f = frac.empty() ? BigInt(0) : parse_int(frac);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    result = Rational(w * scale + f, scale);
  } else {
    result = Rational(parse_int(text));
  }
  return negative ? Rational(-result) : result;
}

/// Canonical text form: "p/q" in lowest terms, or "p" for integers.
inline std::string to_string(const Rational& q) {
  BigInt den = denominator_of(q);
  if (den == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + den.str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational power(Rational base, unsigned exponent) {
  Rational result = 1;
  while (exponent != 0) {
    if (exponent & 1u) result *= base;
    base *= base;
    exponent >>= 1u;
  }
  return result;
}

/// Smallest multiple of 1/resolution that is >= x.
inline Rational ceil_rational(double x, std::int64_t resolution = 1'000'000'000) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  double scaled = std::ceil(x * static_cast<double>(resolution));
  return Rational(BigInt(static_cast<long long>(scaled)), BigInt(resolution));
}

inline BigInt ceil_of(const Rational& q) {
  BigInt num = numerator_of(q);
  BigInt den = denominator_of(q);
  BigInt quot = num / den;
  if (quot * den != num && num > 0) quot += 1;
  return quot;
}

/// C(n, k) for arbitrary integers; zero whenever k < 0, n < 0 or k > n.
inline BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

inline Count to_count(const BigInt& v) {
  if (v < 0 || v > BigInt(std::numeric_limits<Count>::max()))
    throw std::overflow_error("value does not fit in a 64-bit count: " + v.str());
  return v.convert_to<Count>();
}

}  // namespace genturan
