#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace rreach {

// Exact arbitrary-precision integers and rationals on the GMP backend.
// Rational is kept canonical by GMP: lowest terms, positive denominator.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline BigInt int_pow(const BigInt& base, unsigned long exponent) {
  return pow(base, exponent);
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(num, den);
}

inline Rational frac(long num, long den) {
  return make_rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_fraction_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

// "num/den" or plain integer.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt(text));
  BigInt num(text.substr(0, slash));
  BigInt den(text.substr(slash + 1));
  return make_rational(num, den);
}

namespace detail {

inline BigInt pow10_big(long e) { return int_pow(BigInt(10), static_cast<unsigned long>(e)); }

// n <=> d * 10^e for nonnegative n, positive d, any e.
inline int cmp_scaled(const BigInt& n, const BigInt& d, long e) {
  if (e >= 0) return n.compare(BigInt(d * pow10_big(e)));
  return BigInt(n * pow10_big(-e)).compare(d);
}

}  // namespace detail

// Fixed-point decimal rendering at `significant` significant digits,
// round-half-even. Used everywhere a table-style decimal is printed.
inline std::string to_decimal_string(const Rational& q, int significant) {
  if (significant < 1) throw std::invalid_argument("need at least one significant digit");
  if (q == 0) return "0";
  BigInt n = numerator(q);
  const BigInt d = denominator(q);
  const bool negative = n < 0;
  if (negative) n = -n;

  long e = static_cast<long>(n.str().size()) - static_cast<long>(d.str().size());
  while (detail::cmp_scaled(n, d, e) < 0) --e;
  while (detail::cmp_scaled(n, d, e + 1) >= 0) ++e;
  // d * 10^e <= n < d * 10^{e+1}

  const long shift = significant - 1 - e;
  BigInt n2 = n, d2 = d;
  if (shift >= 0) n2 *= detail::pow10_big(shift); else d2 *= detail::pow10_big(-shift);
  BigInt digits = n2 / d2;
  const BigInt rem = n2 % d2;
  const int half = BigInt(rem * 2).compare(d2);
  if (half > 0 || (half == 0 && digits % 2 != 0)) ++digits;
  if (digits == detail::pow10_big(significant)) {
    digits = detail::pow10_big(significant - 1);
    ++e;
  }

  const std::string ds = digits.str();
  std::string out;
  if (e >= significant - 1) {
    out = ds + std::string(static_cast<std::size_t>(e - (significant - 1)), '0');
  } else if (e >= 0) {
    out = ds.substr(0, static_cast<std::size_t>(e + 1)) + "." +
          ds.substr(static_cast<std::size_t>(e + 1));
  } else {
    out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + ds;
  }
  return negative ? "-" + out : out;
}

}  // namespace rreach
