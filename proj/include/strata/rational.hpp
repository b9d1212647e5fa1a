#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "strata/errors.hpp"

namespace strata {

using BigInt = boost::multiprecision::cpp_int;
/// Exact rational; always stored reduced with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// "P/Q" in lowest terms, or "P" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses "P", "-P" or "P/Q". Throws InvalidInput on anything else.
inline Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
    throw InvalidInput("malformed rational '" + std::string(text) + "'");
  BigInt n(std::string(num.front() == '+' ? num.substr(1) : num));
  BigInt d{std::string(den)};
  if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

inline Rational sign_power(int exponent) { return exponent % 2 == 0 ? Rational(1) : Rational(-1); }

/// n!! for n >= -1, with (-1)!! = 0!! = 1.
inline BigInt double_factorial(int n) {
  if (n < -1) throw InvalidInput("double factorial of " + std::to_string(n));
  BigInt r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

}  // namespace strata
